#include "bsurf.h"

#include <new>
#include <string>

#include "bsurf/commands.hpp"

struct bsurf_options {
  bsurf::CommandOptions opts;
};

struct bsurf_result {
  bsurf_status status = BSURF_INTERNAL_ERROR;
  std::string text;
  std::string json;
  std::string error;
  bool has_error = true;
};

extern "C" {

const char* bsurf_version(void) { return "1.0.0"; }

const char* bsurf_command_list(void) {
  static std::string joined = [] {
    std::string s;
    for (const auto& name : bsurf::command_names()) {
      if (!s.empty()) s += ",";
      s += name;
    }
    return s;
  }();
  return joined.c_str();
}

bsurf_options* bsurf_options_new(void) { return new (std::nothrow) bsurf_options(); }

void bsurf_options_free(bsurf_options* opts) { delete opts; }

void bsurf_options_set_seed(bsurf_options* opts, uint64_t seed) {
  if (opts) opts->opts.seed = seed;
}

void bsurf_options_set_cap(bsurf_options* opts, int64_t cap) {
  if (opts && cap > 0) opts->opts.cap = cap;
}

void bsurf_options_set_threads(bsurf_options* opts, int threads) {
  if (opts && threads > 0) opts->opts.threads = threads;
}

bsurf_status bsurf_run(const char* command, const char* scenario_json, const bsurf_options* opts,
                       bsurf_result** out) {
  if (!out) return BSURF_INTERNAL_ERROR;
  auto* res = new (std::nothrow) bsurf_result();
  if (!res) {
    *out = nullptr;
    return BSURF_INTERNAL_ERROR;
  }
  *out = res;
  if (!command || !scenario_json) {
    res->status = BSURF_SCHEMA_ERROR;
    res->error = "command and scenario must be non-null";
    return res->status;
  }
  bsurf::CommandOptions options = opts ? opts->opts : bsurf::CommandOptions{};
  try {
    bsurf::CommandResult r = bsurf::run_command(command, scenario_json, options);
    res->status = BSURF_OK;
    res->text = std::move(r.text);
    res->json = std::move(r.json);
    res->has_error = false;
  } catch (const bsurf::SchemaError& e) {
    res->status = BSURF_SCHEMA_ERROR;
    res->error = e.what();
  } catch (const bsurf::PreconditionError& e) {
    res->status = BSURF_PRECONDITION_ERROR;
    res->error = e.what();
  } catch (const bsurf::TheoremFalsified& e) {
    res->status = BSURF_THEOREM_FALSIFIED;
    res->error = e.what();
  } catch (const std::exception& e) {
    res->status = BSURF_INTERNAL_ERROR;
    res->error = e.what();
  } catch (...) {
    res->status = BSURF_INTERNAL_ERROR;
    res->error = "unknown error";
  }
  return res->status;
}

bsurf_status bsurf_result_status(const bsurf_result* res) {
  return res ? res->status : BSURF_INTERNAL_ERROR;
}

const char* bsurf_result_text(const bsurf_result* res) { return res ? res->text.c_str() : ""; }

const char* bsurf_result_json(const bsurf_result* res) { return res ? res->json.c_str() : ""; }

const char* bsurf_result_error(const bsurf_result* res) {
  if (!res || !res->has_error) return nullptr;
  return res->error.c_str();
}

void bsurf_result_free(bsurf_result* res) { delete res; }

}  // extern "C"
