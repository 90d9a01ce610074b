#include "bsurf/commands.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bsurf/brauer.hpp"
#include "bsurf/gl2.hpp"
#include "bsurf/instances.hpp"
#include "bsurf/lattice.hpp"
#include "bsurf/modring.hpp"
#include "bsurf/torsionhom.hpp"

namespace bsurf {

namespace {

using nlohmann::json;

void require_version(const json& doc) {
  if (!doc.is_object()) throw SchemaError("scenario must be a JSON object");
  if (!doc.contains("version") || !doc["version"].is_number_integer() || doc["version"] != 1)
    throw SchemaError("scenario must carry \"version\": 1");
}

std::int64_t get_int(const json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc[key].is_number_integer())
    throw SchemaError("missing or non-integer field \"" + key + "\"");
  return doc[key].get<std::int64_t>();
}

std::int64_t get_int_or(const json& doc, const std::string& key, std::int64_t fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_number_integer()) throw SchemaError("non-integer field \"" + key + "\"");
  return doc[key].get<std::int64_t>();
}

bool get_bool(const json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc[key].is_boolean())
    throw SchemaError("missing or non-boolean field \"" + key + "\"");
  return doc[key].get<bool>();
}

Mat2 parse_matrix(Modulus mod, const json& j, const std::string& what, bool must_be_invertible) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2)
    throw SchemaError(what + " must be a 2x2 integer array");
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      if (!j[r][c].is_number_integer()) throw SchemaError(what + " must have integer entries");
  Mat2 m(mod, j[0][0].get<std::int64_t>(), j[0][1].get<std::int64_t>(),
         j[1][0].get<std::int64_t>(), j[1][1].get<std::int64_t>());
  if (must_be_invertible && !m.invertible())
    throw SchemaError(what + " must be invertible mod " + std::to_string(mod.value()));
  return m;
}

json matrix_json(const Mat2& m) {
  return json::array({json::array({m.a(), m.b()}), json::array({m.c(), m.d()})});
}

json shape_json(const AbelianShape& s) {
  json arr = json::array();
  for (auto f : s.factors()) arr.push_back(f);
  return arr;
}

std::string shape_str(const AbelianShape& s) {
  if (s.trivial()) return "trivial";
  std::string out;
  for (std::size_t i = 0; i < s.factors().size(); ++i) {
    if (i) out += " x ";
    out += "Z/" + std::to_string(s.factors()[i]);
  }
  return out;
}

std::string matrix_str(const Mat2& m) {
  std::ostringstream os;
  os << "[[" << m.a() << "," << m.b() << "],[" << m.c() << "," << m.d() << "]]";
  return os.str();
}

std::vector<Mat2> parse_generators(Modulus mod, const json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw SchemaError("missing or non-array field \"" + key + "\"");
  std::vector<Mat2> gens;
  for (const auto& g : doc[key]) gens.push_back(parse_matrix(mod, g, "generator", true));
  return gens;
}

std::int64_t checked_prime_power(std::int64_t ell, std::int64_t s) {
  if (ell < 2 || s < 1) throw SchemaError("ell and s must satisfy ell >= 2, s >= 1");
  std::int64_t q = 1;
  for (std::int64_t i = 0; i < s; ++i) {
    if (q > kMaxModulus / ell) throw PreconditionError("ell^s exceeds the modulus cap");
    q *= ell;
  }
  return q;
}

CommandResult cmd_commutant(const json& doc, const CommandOptions&) {
  std::int64_t ell = get_int(doc, "ell");
  std::int64_t s = get_int(doc, "s");
  Modulus mod(checked_prime_power(ell, s));
  if (!doc.contains("matrix")) throw SchemaError("missing field \"matrix\"");
  Mat2 a = parse_matrix(mod, doc["matrix"], "matrix", false);
  CommutantResult res = commutant(a, ell, s);

  json out;
  out["command"] = "commutant";
  out["ell"] = ell;
  out["s"] = s;
  out["matrix"] = matrix_json(a);
  out["mu"] = res.mu ? json(*res.mu) : json(nullptr);
  out["generators"] = json::array();
  for (const auto& g : res.generators) out["generators"].push_back(matrix_json(g));
  out["shape"] = shape_json(res.shape);
  out["order"] = res.shape.order().str();

  std::ostringstream os;
  os << "commutant of " << matrix_str(a) << " in M2(Z/" << mod.value() << ")\n";
  os << "  mu        : " << (res.mu ? std::to_string(*res.mu) : std::string("-")) << "\n";
  os << "  generators:";
  for (const auto& g : res.generators) os << " " << matrix_str(g);
  os << "\n  shape     : " << shape_str(res.shape) << "  (order " << res.shape.order() << ")\n";
  return {os.str(), out.dump(2)};
}

CommandResult cmd_end_invariants(const json& doc, const CommandOptions& opts) {
  Modulus mod(get_int(doc, "modulus"));
  MatrixGroup image(mod, parse_generators(mod, doc, "generators"), opts.cap);
  EndStructure es = end_invariants(image);  // certifies both routes agree
  std::int64_t abelian = largest_abelian_divisor(image);

  json out;
  out["command"] = "end-invariants";
  out["n"] = es.n;
  out["n1"] = es.n1;
  out["n2"] = es.n2;
  out["routes"] = "AGREE";
  out["scalar_divisor"] = es.n2;
  out["enveloped_divisor"] = es.n1;
  out["abelian_divisor"] = abelian;
  out["abelian_divisor_matches_n1"] = abelian == es.n1;
  out["quotient_order"] = es.quotient_order().str();

  std::ostringstream os;
  os << "equivariant endomorphisms of the n-torsion, n = " << es.n << "\n";
  os << "  (n, n1, n2) : (" << es.n << ", " << es.n1 << ", " << es.n2 << ")\n";
  os << "  commutant and certified divisor-scan routes AGREE\n";
  os << "  end quotient order n1*n2^2 = " << es.quotient_order() << "\n";
  os << "  largest abelian divisor    = " << abelian;
  if (abelian != es.n1)
    os << "  (exceeds n1: image is scalar mod a prime with independent depth directions)";
  os << "\n";
  return {os.str(), out.dump(2)};
}

CommandResult cmd_hom_invariants(const json& doc, const CommandOptions&) {
  Modulus mod(get_int(doc, "modulus"));
  if (!doc.contains("pairs") || !doc["pairs"].is_array())
    throw SchemaError("missing or non-array field \"pairs\"");
  std::vector<ActionPair> pairs;
  for (const auto& p : doc["pairs"]) {
    if (!p.is_object()) throw SchemaError("each pair must be an object");
    std::int64_t chi = get_int_or(p, "chi", 1);
    if (chi != 1 && chi != -1) throw SchemaError("chi must be +1 or -1");
    if (!p.contains("m") || !p.contains("m_prime"))
      throw SchemaError("each pair needs \"m\" and \"m_prime\"");
    pairs.push_back(ActionPair{parse_matrix(mod, p["m"], "m", true),
                               parse_matrix(mod, p["m_prime"], "m_prime", true),
                               static_cast<int>(chi)});
  }
  PairAction action(mod, std::move(pairs));
  FixedHomModule fixed = invariant_homs(action);

  json out;
  out["command"] = "hom-invariants";
  out["modulus"] = mod.value();
  out["twist_nontrivial"] = action.twist_nontrivial();
  out["basis"] = json::array();
  for (const auto& b : fixed.basis) out["basis"].push_back(matrix_json(b));
  out["shape"] = shape_json(fixed.shape);
  out["order"] = fixed.shape.order().str();

  std::ostringstream os;
  os << "equivariant homomorphisms mod " << mod.value() << " (" << action.pairs().size()
     << " generators)\n";
  os << "  basis:";
  for (const auto& b : fixed.basis) os << " " << matrix_str(b);
  os << "\n  shape: " << shape_str(fixed.shape) << "  (order " << fixed.shape.order() << ")\n";
  return {os.str(), out.dump(2)};
}

CommandResult cmd_classify_abelian(const json& doc, const CommandOptions& opts) {
  std::int64_t ell = get_int(doc, "ell");
  std::int64_t s = get_int(doc, "s");
  Modulus mod(checked_prime_power(ell, s));
  MatrixGroup h(mod, parse_generators(mod, doc, "generators"), opts.cap);
  NormalFormTag tag = classify_abelian(h, ell, s);

  json out;
  out["command"] = "classify-abelian";
  out["ell"] = ell;
  out["s"] = s;
  out["kind"] = to_string(tag.kind);
  out["level"] = tag.level;
  if (tag.kind == NormalFormKind::NonsplitCartan) {
    out["t"] = tag.t;
    out["epsilon"] = tag.epsilon;
  } else if (tag.kind == NormalFormKind::BorelAbelian) {
    out["t"] = tag.t;
  }
  out["conjugator"] = matrix_json(tag.conjugator);
  out["verified"] = true;  // classify_abelian checks containment element-wise

  std::ostringstream os;
  os << "abelian subgroup normal form mod " << tag.level << "\n";
  os << "  kind      : " << to_string(tag.kind);
  if (tag.kind == NormalFormKind::NonsplitCartan)
    os << " (t = " << tag.t << ", epsilon = " << tag.epsilon << ")";
  if (tag.kind == NormalFormKind::BorelAbelian) os << " (t = " << tag.t << ")";
  os << "\n  conjugator: " << matrix_str(tag.conjugator) << "\n";
  os << "  containment verified element-by-element\n";
  return {os.str(), out.dump(2)};
}

CommandResult cmd_enumerate_abelian(const json& doc, const CommandOptions& opts) {
  std::int64_t ell = get_int(doc, "ell");
  std::int64_t s = get_int(doc, "s");
  AbelianEnumeration e = enumerate_abelian(ell, s, opts.threads);

  json out;
  out["command"] = "enumerate-abelian";
  out["ell"] = e.ell;
  out["s"] = e.s;
  out["total_subgroups"] = e.total_subgroups;
  out["conjugacy_classes"] = e.class_count;
  out["max_order"] = e.max_order;
  out["order_bound"] = [&] {
    std::int64_t b = 1;
    for (int i = 0; i < 3 * s; ++i) b *= ell;
    return b;
  }();
  out["histogram"] = json::object();
  for (const auto& [k, v] : e.tag_histogram) out["histogram"][k] = v;

  std::ostringstream os;
  os << "abelian subgroups of GL2(Z/" << e.ell;
  if (s > 1) os << "^" << s;
  os << ")\n";
  os << "  subgroups          : " << e.total_subgroups << "\n";
  os << "  conjugacy classes  : " << e.class_count << "\n";
  os << "  max order          : " << e.max_order << "  (bound " << out["order_bound"] << ")\n";
  os << "  normal-form classes:";
  for (const auto& [k, v] : e.tag_histogram) os << "  " << k << "=" << v;
  os << "\n";
  return {os.str(), out.dump(2)};
}

CommandResult cmd_brauer_bound(const json& doc, const CommandOptions&) {
  json out;
  out["command"] = "brauer-bound";
  std::ostringstream os;

  if (doc.contains("preset")) {
    if (!doc["preset"].is_string() || doc["preset"] != "over-q")
      throw SchemaError("unknown preset (supported: \"over-q\")");
    std::int64_t d = get_int(doc, "d");
    BigInt bound = over_q_bound(d);
    out["preset"] = "over-q";
    out["d"] = d;
    out["bound"] = bound.str();
    os << "rational-base preset, cyclic degree d = " << d << "\n";
    os << "  division-field level  : n <= 8d = " << 8 * d << "\n";
    os << "  bound (8d)^3          : " << bound << "\n";
    return {os.str(), out.dump(2)};
  }

  Modulus n(get_int(doc, "n"));
  std::int64_t d = get_int(doc, "d");
  std::int64_t period = get_int(doc, "period");
  bool twist = get_bool(doc, "twist_nontrivial");
  std::int64_t base_degree = get_int_or(doc, "base_change_degree", 1);
  std::string kind_str = doc.contains("surface") && doc["surface"].is_string()
                             ? doc["surface"].get<std::string>()
                             : throw SchemaError("missing string field \"surface\"");
  SurfaceKind kind;
  if (kind_str == "abelian-torsor")
    kind = SurfaceKind::AbelianTorsor;
  else if (kind_str == "kummer-k3")
    kind = SurfaceKind::KummerK3;
  else
    throw SchemaError("surface must be \"abelian-torsor\" or \"kummer-k3\"");
  SurfaceScenario sc(n, d, period, twist, base_degree, kind);

  if (!doc.contains("end_structure") || !doc["end_structure"].is_object())
    throw SchemaError("missing object field \"end_structure\"");
  EndStructure end_k{n.value(), get_int(doc["end_structure"], "n1"),
                     get_int(doc["end_structure"], "n2")};
  std::optional<EndStructure> end_twist;
  if (doc.contains("end_structure_twist")) {
    if (!doc["end_structure_twist"].is_object())
      throw SchemaError("\"end_structure_twist\" must be an object");
    end_twist = EndStructure{n.value(), get_int(doc["end_structure_twist"], "n1"),
                             get_int(doc["end_structure_twist"], "n2")};
  }

  BoundCertificate cert = brauer_n_torsion_bound(sc, end_k, end_twist);
  BigInt budget = field_degree_budget(sc);
  std::int64_t c = c_constant(sc);

  out["n"] = n.value();
  out["d"] = d;
  out["period"] = period;
  out["twist_nontrivial"] = twist;
  out["surface"] = kind_str;
  out["field_degree_budget"] = budget.str();
  out["c_constant"] = c;
  out["factors"] = json::array();
  for (const auto& f : cert.factors)
    out["factors"].push_back(json{{"label", f.label}, {"value", f.value.str()}});
  out["bound"] = cert.bound.str();
  out["embedding_exact"] = cert.embedding_exact;
  out["note"] = cert.note;

  os << "transcendental Brauer n-torsion bound (n = " << n.value() << ", d = " << d
     << ", period = " << period << ", " << (twist ? "twisted" : "untwisted") << ", " << kind_str
     << ")\n";
  os << "  field degree budget : " << budget << "\n";
  os << "  c constant          : " << c << "\n";
  for (const auto& f : cert.factors)
    os << "  factor " << f.value << "  <- " << f.label << "\n";
  os << "  bound               : " << cert.bound << "\n";
  os << "  exactness           : " << (cert.embedding_exact ? "embedding exact" : "upper bound only")
     << "\n";
  return {os.str(), out.dump(2)};
}

CommandResult cmd_lattice(const json& doc, const CommandOptions&) {
  if (!doc.contains("selector") || !doc["selector"].is_string())
    throw SchemaError("missing string field \"selector\"");
  std::string sel = doc["selector"].get<std::string>();
  GramLattice l = [&] {
    if (sel == "family") return build_family_gram(get_int(doc, "d"));
    if (sel == "kummer") return build_kummer_lattice();
    if (sel == "lambda-prod") return build_lambda_prod();
    throw SchemaError("selector must be \"family\", \"kummer\" or \"lambda-prod\"");
  }();
  LatticeReport rep = lattice_report(l);

  json out;
  out["command"] = "lattice";
  out["selector"] = sel;
  if (sel == "family") out["d"] = get_int(doc, "d");
  out["label"] = l.label;
  out["rank"] = rep.rank;
  out["determinant"] = rep.determinant.str();
  out["even"] = rep.even;
  out["signature"] = json::array({rep.positive, rep.negative});
  out["degenerate"] = rep.degenerate;

  std::ostringstream os;
  os << "lattice " << l.label << "\n";
  os << "  rank        : " << rep.rank << "\n";
  os << "  determinant : " << rep.determinant << "\n";
  os << "  even        : " << (rep.even ? "yes" : "no") << "\n";
  os << "  signature   : (" << rep.positive << ", " << rep.negative << ")"
     << (rep.zero ? " + " + std::to_string(rep.zero) + " null" : "") << "\n";
  if (rep.degenerate) os << "  degenerate Gram matrix\n";
  return {os.str(), out.dump(2)};
}

CommandResult cmd_h1_bound(const json& doc, const CommandOptions& opts) {
  std::int64_t rank = get_int(doc, "rank");
  if (!doc.contains("generators") || !doc["generators"].is_array())
    throw SchemaError("missing or non-array field \"generators\"");
  std::vector<BigMatrix> gens;
  for (const auto& g : doc["generators"]) {
    if (!g.is_array() || static_cast<std::int64_t>(g.size()) != rank)
      throw SchemaError("generator must be a rank x rank integer array");
    BigMatrix m;
    for (const auto& row : g) {
      if (!row.is_array() || static_cast<std::int64_t>(row.size()) != rank)
        throw SchemaError("generator must be a rank x rank integer array");
      std::vector<BigInt> r;
      for (const auto& v : row) {
        if (!v.is_number_integer()) throw SchemaError("generator entries must be integers");
        r.emplace_back(v.get<std::int64_t>());
      }
      m.push_back(std::move(r));
    }
    gens.push_back(std::move(m));
  }
  IntegerActionGroup g(rank, std::move(gens), opts.cap);
  BigInt h1 = h1_integer_action(g);
  BigInt budget = big_pow(BigInt(g.order()), rank);

  json out;
  out["command"] = "h1-bound";
  out["rank"] = rank;
  out["group_order"] = g.order();
  out["h1_order"] = h1.str();
  out["divides_order_pow_rank"] = true;  // asserted inside h1_integer_action

  std::ostringstream os;
  os << "H^1 of a finite group acting on Z^" << rank << "\n";
  os << "  |G|        : " << g.order() << "\n";
  os << "  #H^1       : " << h1 << "\n";
  os << "  divides |G|^r = " << budget << "\n";
  return {os.str(), out.dump(2)};
}

CommandResult cmd_finite_gl2r(const json& doc, const CommandOptions&) {
  std::int64_t d = get_int(doc, "d");
  if (!doc.contains("generators") || !doc["generators"].is_array())
    throw SchemaError("missing or non-array field \"generators\"");
  std::vector<RealQuadMatrix> gens;
  for (const auto& g : doc["generators"]) {
    if (!g.is_array() || g.size() != 2) throw SchemaError("generator must be a 2x2 array");
    std::array<QuadInt, 4> entries;
    int at = 0;
    for (const auto& row : g) {
      if (!row.is_array() || row.size() != 2) throw SchemaError("generator must be a 2x2 array");
      for (const auto& entry : row) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
            !entry[1].is_number_integer())
          throw SchemaError("entries must be [a, b] pairs meaning a + b*sqrt(d)");
        entries[at++] = QuadInt{entry[0].get<std::int64_t>(), entry[1].get<std::int64_t>()};
      }
    }
    gens.emplace_back(d, entries);
  }
  FiniteRealGroupType t = classify_finite_real(gens);

  json out;
  out["command"] = "finite-gl2r";
  out["d"] = d;
  out["type"] = t.dihedral ? "dihedral" : "cyclic";
  out["order"] = t.order;
  out["contains_minus_identity"] = t.contains_minus_identity;

  std::ostringstream os;
  os << "finite subgroup of GL2(R) over Z[sqrt(" << d << ")]\n";
  os << "  type  : " << (t.dihedral ? "dihedral" : "cyclic") << " of order " << t.order << "\n";
  os << "  -I in G : " << (t.contains_minus_identity ? "yes" : "no") << "\n";
  return {os.str(), out.dump(2)};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "commutant",       "end-invariants",    "hom-invariants",
      "classify-abelian", "enumerate-abelian", "brauer-bound",
      "lattice",         "h1-bound",          "finite-gl2r"};
  return names;
}

CommandResult run_command(const std::string& command, const std::string& scenario_json,
                          const CommandOptions& opts) {
  json doc;
  try {
    doc = json::parse(scenario_json);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  require_version(doc);

  if (command == "commutant") return cmd_commutant(doc, opts);
  if (command == "end-invariants") return cmd_end_invariants(doc, opts);
  if (command == "hom-invariants") return cmd_hom_invariants(doc, opts);
  if (command == "classify-abelian") return cmd_classify_abelian(doc, opts);
  if (command == "enumerate-abelian") return cmd_enumerate_abelian(doc, opts);
  if (command == "brauer-bound") return cmd_brauer_bound(doc, opts);
  if (command == "lattice") return cmd_lattice(doc, opts);
  if (command == "h1-bound") return cmd_h1_bound(doc, opts);
  if (command == "finite-gl2r") return cmd_finite_gl2r(doc, opts);
  throw SchemaError("unknown command \"" + command + "\"");
}

}  // namespace bsurf
