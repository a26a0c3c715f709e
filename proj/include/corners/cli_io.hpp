#pragma once

// JSON documents for spaces, maps and arrangements; canonical reports; DOT
// output; and the command line driver.

#include "corners/bmaps.hpp"
#include "corners/frames.hpp"
#include "corners/generators.hpp"
#include "corners/manybody.hpp"
#include "corners/products.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace corners::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// FNV-1a, 64 bit, as 16 hex digits.
inline std::string digest(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

inline json integer_json(const Integer& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(n);
  return n.str();
}

inline Integer integer_from_json(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    auto q = parse_rational(j.get<std::string>());
    if (!is_integral(q)) throw InputError(what + ": expected an integer");
    return to_integer(q);
  }
  throw InputError(what + ": expected an integer");
}

inline Rational rational_from_json(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError(what + ": expected an integer or a \"p/q\" string");
}

inline json vector_json(const MonoidVector& v) {
  json o = json::object();
  for (const auto& [k, c] : v.coords()) o[k] = integer_json(c);
  return o;
}

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::vector<std::string> string_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected a list of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw InputError(what + ": expected a list of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

// "a+2*b+c": a nonnegative combination of labels.
inline MonoidVector parse_vector(const std::string& expr) {
  MonoidVector v;
  std::stringstream ss(expr);
  std::string term;
  while (std::getline(ss, term, '+')) {
    if (term.empty()) throw InputError("empty term in '" + expr + "'");
    Integer k = 1;
    auto star = term.find('*');
    if (star != std::string::npos) {
      k = integer_from_json(term.substr(0, star), "coefficient in '" + expr + "'");
      term = term.substr(star + 1);
    }
    v += k * MonoidVector::unit(term);
  }
  return v;
}

// Rational combinations: "r1^2*r3/r2", "1", "1/r2".  Atoms are r<label>
// with an optional integer exponent; at most one '/'.
inline RationalCombination parse_combination(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos && s.find('/', slash + 1) != std::string::npos)
    throw InputError("rational combination '" + s + "' has more than one '/'");
  RationalCombination out;
  auto side = [&](const std::string& part, int sign) {
    if (part == "1") return;
    if (part.empty() || part.front() == '*' || part.back() == '*' || part.find("**") != std::string::npos)
      throw InputError("empty factor in rational combination '" + s + "'");
    std::stringstream ss(part);
    std::string atom;
    while (std::getline(ss, atom, '*')) {
      if (atom.size() < 2 || atom[0] != 'r') throw InputError("bad atom '" + atom + "' in '" + s + "'");
      Integer e = 1;
      auto caret = atom.find('^');
      std::string label = atom.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
      if (caret != std::string::npos && caret + 1 == atom.size()) throw InputError("missing exponent in '" + s + "'");
      if (caret != std::string::npos) e = integer_from_json(atom.substr(caret + 1), "exponent in '" + s + "'");
      if (label.empty()) throw InputError("bad atom '" + atom + "' in '" + s + "'");
      out += (sign * e) * MonoidVector::unit(label);
    }
  };
  side(s.substr(0, slash), 1);
  if (slash != std::string::npos) side(s.substr(slash + 1), -1);
  return out;
}

inline std::vector<RationalCombination> parse_combinations(const std::string& s) {
  std::vector<RationalCombination> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_combination(item));
  if (out.empty()) throw InputError("no rational combinations given");
  return out;
}

// ---- spaces ----

struct SpaceDocument {
  CornersSpace space;
  std::vector<std::set<MonoidVector>> blowups;  // centers, in order
};

inline std::set<MonoidVector> center_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("blow-up center must be a nonempty list");
  std::set<MonoidVector> out;
  for (const auto& g : j) {
    if (g.is_string()) {
      out.insert(parse_vector(g.get<std::string>()));
    } else if (g.is_object()) {
      MonoidVector v;
      for (const auto& [k, c] : g.items()) v += integer_from_json(c, "center coefficient") * MonoidVector::unit(k);
      out.insert(v);
    } else {
      throw InputError("blow-up center entries are labels or {label: coefficient} objects");
    }
  }
  return out;
}

inline json center_json(const std::set<MonoidVector>& c) {
  json a = json::array();
  for (const auto& v : c) {
    if (v.coords().size() == 1 && v.coords().begin()->second == 1)
      a.push_back(v.coords().begin()->first);
    else
      a.push_back(vector_json(v));
  }
  return a;
}

inline SpaceDocument load_space(const json& j) {
  const std::string where = "space document";
  if (j.contains("schema_version") && j.at("schema_version") != kSchemaVersion)
    throw InputError(where + ": unsupported schema_version");
  const auto& interior = field(j, "interior", where);
  if (!interior.is_string()) throw InputError(where + ": interior must be a string");
  auto hyps = string_list(field(j, "hypersurfaces", where), "hypersurfaces");
  Relation order;
  if (j.contains("order"))
    for (const auto& e : j.at("order")) {
      auto p = string_list(e, "order edge");
      if (p.size() != 2) throw InputError("order edges are [lower, upper] pairs");
      order.emplace(p[0], p[1]);
    }
  std::set<Simplex> corners;
  if (j.contains("corners"))
    for (const auto& c : j.at("corners")) {
      auto l = string_list(c, "corner");
      corners.emplace(l.begin(), l.end());
    }
  SpaceDocument d{CornersSpace(interior.get<std::string>(), {hyps.begin(), hyps.end()}, order, corners), {}};
  if (j.contains("blowups"))
    for (const auto& c : j.at("blowups")) d.blowups.push_back(center_from_json(c));
  if (j.contains("fibrations")) {
    for (const auto& [h, f] : j.at("fibrations").items()) {
      if (!d.space.hypersurfaces().count(h)) throw InputError("fibration annotation for unknown hypersurface " + h);
      auto [up, down] = fibration_index_sets(d.space, h);
      auto check = [&](const char* key, const std::set<Label>& want) {
        if (!f.contains(key)) return;
        auto got = string_list(f.at(key), key);
        if (std::set<Label>(got.begin(), got.end()) != want)
          throw InputError(std::string(key) + " annotation of " + h + " does not match the order");
      };
      check("fiber_index", up);
      check("base_index", down);
    }
  }
  return d;
}

// Canonical form: sorted hypersurfaces, covering edges, maximal corners.
inline json space_json(const CornersSpace& x, const std::vector<std::set<MonoidVector>>& blowups = {}) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["interior"] = x.interior();
  j["hypersurfaces"] = std::vector<std::string>(x.hypersurfaces().begin(), x.hypersurfaces().end());
  json order = json::array();
  for (const auto& [a, b] : covering_relation(x.order())) order.push_back({a, b});
  j["order"] = order;
  json corners = json::array();
  for (const auto& s : x.max_simplices()) corners.push_back(std::vector<std::string>(s.begin(), s.end()));
  j["corners"] = corners;
  if (!blowups.empty()) {
    json b = json::array();
    for (const auto& c : blowups) b.push_back(center_json(c));
    j["blowups"] = b;
  }
  return j;
}

inline json space_json(const SpaceDocument& d) { return space_json(d.space, d.blowups); }

inline RefinedSpace refine(const SpaceDocument& d) {
  RefinedSpace r = initial_refinement(d.space);
  for (const auto& c : d.blowups) r = blow_up_face(r, c);
  return r;
}

// ---- maps and arrangements ----

struct MapDocument {
  BMap map;
  SpaceDocument domain, codomain;
};

inline MapDocument load_map(const json& j) {
  const std::string where = "map document";
  auto dom = load_space(field(j, "domain", where));
  auto cod = load_space(field(j, "codomain", where));
  std::map<Label, MonoidVector> cols;
  if (j.contains("exponents"))
    for (const auto& [h, row] : j.at("exponents").items()) {
      MonoidVector v;
      for (const auto& [g, e] : row.items()) v += integer_from_json(e, "exponent") * MonoidVector::unit(g);
      cols.emplace(h, v);
    }
  return {BMap(dom.space, cod.space, cols), dom, cod};
}

inline json map_json(const MapDocument& m) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["domain"] = space_json(m.domain);
  j["codomain"] = space_json(m.codomain);
  json e = json::object();
  for (const auto& h : m.map.domain().hypersurfaces()) e[h] = vector_json(m.map.column(h));
  j["exponents"] = e;
  return j;
}

inline SubspaceArrangement load_arrangement(const json& j) {
  const std::string where = "arrangement document";
  const auto& n = field(j, "ambient_dim", where);
  if (!n.is_number_integer() || n.get<std::int64_t>() < 0) throw InputError(where + ": ambient_dim must be a non-negative integer");
  const auto dim = static_cast<std::size_t>(n.get<std::int64_t>());
  std::vector<RationalMatrix> raw;
  if (j.contains("subspaces"))
    for (const auto& s : j.at("subspaces")) {
      if (!s.is_array()) throw InputError(where + ": each subspace is a list of rows");
      RationalMatrix m;
      for (const auto& row : s) {
        if (!row.is_array()) throw InputError(where + ": each row is a list of numbers");
        RationalVector r;
        for (const auto& x : row) r.push_back(rational_from_json(x, "subspace entry"));
        m.push_back(std::move(r));
      }
      raw.push_back(std::move(m));
    }
  return close_arrangement(dim, raw);
}

inline json arrangement_json(const SubspaceArrangement& a) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["ambient_dim"] = a.ambient_dim;
  json subs = json::array();
  for (const auto& s : a.subspaces) {
    json rows = json::array();
    for (const auto& r : s.rows()) {
      json row = json::array();
      for (const auto& x : r) row.push_back(is_integral(x) ? integer_json(to_integer(x)) : json(to_string(x)));
      rows.push_back(row);
    }
    subs.push_back(rows);
  }
  j["subspaces"] = subs;
  return j;
}

// ---- refined spaces, face posets, DOT ----

// Covering edges of `order` among `names` (the interior excluded).
inline std::vector<std::pair<Label, Label>> covering_edges(const Relation& order, const std::set<Label>& names) {
  Relation r;
  for (const auto& [a, b] : order)
    if (names.count(a) && names.count(b)) r.emplace(a, b);
  auto c = covering_relation(r);
  return {c.begin(), c.end()};
}

inline json refined_json(const RefinedSpace& r) {
  const FacePoset p = face_poset(r);
  json j;
  json rays = json::array();
  std::map<Label, MonoidVector> by_name;
  for (const auto& v : p.rays) by_name.emplace(p.names.at(v), v);
  std::set<Label> names;
  for (const auto& [n, v] : by_name) {
    rays.push_back({{"name", n}, {"vector", vector_json(v)}});
    names.insert(n);
  }
  j["rays"] = rays;
  std::set<std::vector<Label>> cones;
  for (const auto& [s, fan] : r.fans)
    for (const auto& c : fan.max_cones()) {
      std::set<Label> g;
      for (const auto& v : c.generators()) g.insert(p.names.at(v));
      cones.emplace(g.begin(), g.end());
    }
  j["cones"] = std::vector<std::vector<Label>>(cones.begin(), cones.end());
  json edges = json::array();
  if (p.order)
    for (const auto& [a, b] : covering_edges(*p.order, names)) edges.push_back({a, b});
  j["poset_edges"] = edges;
  return j;
}

namespace detail {

inline std::string dot_id(const std::string& s) {
  std::string o = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') o += '\\';
    o += c;
  }
  return o + "\"";
}

inline std::string dot_graph(const std::map<Label, std::string>& nodes, const std::vector<std::pair<Label, Label>>& order,
                             const std::set<std::pair<Label, Label>>& dashed) {
  std::ostringstream o;
  o << "digraph faces {\n";
  for (const auto& [n, label] : nodes) o << "  " << dot_id(n) << " [label=" << dot_id(label) << "];\n";
  std::set<std::pair<Label, Label>> solid(order.begin(), order.end());
  for (const auto& [a, b] : solid) o << "  " << dot_id(a) << " -> " << dot_id(b) << ";\n";
  for (const auto& [a, b] : dashed) o << "  " << dot_id(a) << " -> " << dot_id(b) << " [style=dashed, dir=none];\n";
  o << "}\n";
  return o.str();
}

}  // namespace detail

// One node per ray labelled by its coordinate vector, solid edges for the
// covering relation, dashed undirected edges for incident rays that are not
// comparable.
inline std::string emit_dot(const FacePoset& p) {
  std::map<Label, std::string> nodes;
  std::map<Label, MonoidVector> by_name;
  for (const auto& v : p.rays) {
    nodes.emplace(p.names.at(v), v.str());
    by_name.emplace(p.names.at(v), v);
  }
  std::set<Label> names;
  for (const auto& [n, l] : nodes) names.insert(n);
  std::vector<std::pair<Label, Label>> edges;
  Relation closed;
  if (p.order) {
    edges = covering_edges(*p.order, names);
    closed = *p.order;
  }
  std::set<std::pair<Label, Label>> dashed;
  for (const auto& [a, va] : by_name)
    for (const auto& [b, vb] : by_name)
      if (a < b && p.incident(va, vb) && !closed.count({a, b}) && !closed.count({b, a})) dashed.emplace(a, b);
  return detail::dot_graph(nodes, edges, dashed);
}

inline std::string emit_dot(const CornersSpace& x) {
  std::map<Label, std::string> nodes;
  for (const auto& h : x.hypersurfaces()) nodes.emplace(h, h);
  std::set<std::pair<Label, Label>> dashed;
  for (const auto& a : x.hypersurfaces())
    for (const auto& b : x.hypersurfaces())
      if (a < b && x.incident(a, b) && !x.comparable(a, b)) dashed.emplace(a, b);
  return detail::dot_graph(nodes, covering_edges(x.order(), x.hypersurfaces()), dashed);
}

// ---- reports ----

inline json report(const std::string& op, const std::string& inputs, json outputs) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["operation"] = op;
  j["inputs_digest"] = digest(inputs);
  j["outputs"] = std::move(outputs);
  return j;
}

inline json tag_json(const FibrationTag& t) {
  return {{"fiber", t.fiber.str()},
          {"base", t.base.str()},
          {"fiber_index", std::vector<Label>(t.fiber_index.begin(), t.fiber_index.end())},
          {"base_index", std::vector<Label>(t.base_index.begin(), t.base_index.end())}};
}

inline json field_list(const std::vector<MonomialVectorField>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(v.str());
  return a;
}

// ---- command line ----

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
}

inline std::filesystem::path output_path(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative())
    if (const char* dir = std::getenv("CORNERS_OUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  return p;
}

namespace detail {

inline ConeVariant cone_variant(const std::string& v) {
  if (v == "min") return ConeVariant::Min;
  if (v == "max") return ConeVariant::Max;
  return ConeVariant::Relative;
}
inline JoinVariant join_variant(const std::string& v) {
  if (v == "min") return JoinVariant::Min;
  if (v == "max") return JoinVariant::Max;
  return JoinVariant::Relative;
}
inline ConeSide cone_side(const std::string& s) { return s == "base" ? ConeSide::Base : ConeSide::Fiber; }

inline CornersSpace place(const CornersSpace& x, const std::string& variant) {
  if (variant == "min") return with_interior(x, InteriorPlacement::Min);
  if (variant == "max") return with_interior(x, InteriorPlacement::Max);
  return x;
}

// Outcome of one command: report, optional DOT text, exit code.
struct Outcome {
  json report;
  std::optional<std::string> dot;
  int code = 0;
};

inline json sign_json(const SignVerdict& v) {
  json pos = json::array(), neg = json::array();
  for (const auto& g : v.positive) pos.push_back(g.str());
  for (const auto& g : v.negative) neg.push_back(g.str());
  return {{"kind", to_string(v.kind)}, {"positive", pos}, {"negative", neg}};
}

inline json names(const std::set<Label>& s) { return std::vector<Label>(s.begin(), s.end()); }

}  // namespace detail

// Runs one command.  Exit codes: 0 success, 2 a check came out false or a
// lift is absent, 1 invalid input.  Reports go to --out (relative paths
// resolve against $CORNERS_OUT_DIR when set) or to `out`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorics of manifolds with ordered and fibered corners"};
  app.require_subcommand(1);
  std::string out_path, format = "json", variant = "relative", side = "fiber", sigma, sigmas, kind;
  std::vector<std::string> files, centers;
  std::optional<std::uint64_t> seed;
  int n = -1, k = -1, trials = 50;

  auto common = [&](CLI::App* s, int min_files, int max_files) {
    s->add_option("--out", out_path, "write the report here");
    s->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    if (max_files > 0) s->add_option("files", files, "input documents")->expected(min_files, max_files);
  };
  auto with_variant = [&](CLI::App* s) {
    s->add_option("--variant", variant, "min, max or relative")->check(CLI::IsMember({"min", "max", "relative"}));
  };
  auto with_side = [&](CLI::App* s) {
    s->add_option("--side", side, "fiber or base (relative variant)")->check(CLI::IsMember({"fiber", "base"}));
  };
  auto with_seed = [&](CLI::App* s) {
    s->add_option("--seed", seed, "run randomized self-checks with this seed");
    s->add_option("--trials", trials, "number of randomized trials")->check(CLI::PositiveNumber);
  };

  auto* validate_cmd = app.add_subcommand("validate", "check the ordered corners axioms and any blow-ups");
  common(validate_cmd, 1, 1);
  auto* product_cmd = app.add_subcommand("product", "ordered product of two spaces");
  common(product_cmd, 0, 2);
  with_variant(product_cmd);
  with_seed(product_cmd);
  auto* join_cmd = app.add_subcommand("join", "join of two spaces");
  common(join_cmd, 2, 2);
  with_variant(join_cmd);
  with_side(join_cmd);
  auto* cone_cmd = app.add_subcommand("cone", "cone over a space");
  common(cone_cmd, 1, 1);
  with_variant(cone_cmd);
  with_side(cone_cmd);
  auto* blowup_cmd = app.add_subcommand("blowup", "iterated blow-up along the document's and --center faces");
  common(blowup_cmd, 1, 1);
  blowup_cmd->add_option("--center", centers, "comma-separated generators, e.g. \"1,2+3\"");
  auto* lift_cmd = app.add_subcommand("lift-check", "lift a b-map through the codomain blow-ups");
  common(lift_cmd, 1, 1);
  auto* sigma_cmd = app.add_subcommand("sigma-check", "lift of a rational combination of boundary defining functions");
  common(sigma_cmd, 1, 1);
  sigma_cmd->add_option("--sigma", sigma, "e.g. \"r1^2/r2\"")->required();
  auto* psub_cmd = app.add_subcommand("psub-check", "is {sigma_i = 1} a p-submanifold after blow-up");
  common(psub_cmd, 1, 1);
  psub_cmd->add_option("--sigmas", sigmas, "comma-separated, e.g. \"r1/r2,r1/r3\"")->required();
  auto* fiber_cmd = app.add_subcommand("fiber-product", "fiber product of two maps with a common codomain");
  common(fiber_cmd, 2, 2);
  auto* mb_cmd = app.add_subcommand("manybody", "many-body space of a subspace arrangement");
  common(mb_cmd, 1, 1);
  auto* mbp_cmd = app.add_subcommand("mb-product-check", "many-body space of a product versus the ordered product");
  common(mbp_cmd, 0, 2);
  with_seed(mbp_cmd);
  auto* frames_cmd = app.add_subcommand("frames-verify", "push a frame through the compressed projection");
  common(frames_cmd, 0, 0);
  frames_cmd->add_option("--kind", kind, "phi or wedge")->required()->check(CLI::IsMember({"phi", "wedge"}));
  frames_cmd->add_option("--n", n, "depth")->required()->check(CLI::NonNegativeNumber);
  frames_cmd->add_option("--k", k, "hypersurface index, 1 <= k <= n")->required();

  std::vector<std::string> argv_store{"corners_cli"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::string op = cmd->get_name();
  try {
    std::vector<json> docs;
    for (const auto& f : files) docs.push_back(read_json_file(f));
    // Canonical inputs: parsed documents plus the options that matter.
    std::string inputs = op;
    for (const auto& d : docs) inputs += "\n" + d.dump();
    inputs += "\nvariant=" + variant + "\nside=" + side + "\nsigma=" + sigma + "\nsigmas=" + sigmas + "\nkind=" + kind +
              "\nn=" + std::to_string(n) + "\nk=" + std::to_string(k) + "\ntrials=" + std::to_string(trials) +
              "\nseed=" + (seed ? std::to_string(*seed) : "");
    for (const auto& c : centers) inputs += "\ncenter=" + c;

    detail::Outcome res;
    auto need_files = [&](std::size_t count) {
      if (docs.size() != count) throw InputError(op + " needs " + std::to_string(count) + " input document(s)");
    };
    auto require_valid = [](const SpaceDocument& d) {
      auto v = validate(d.space);
      if (!v.empty()) throw InputError("invalid ordered corners space: " + v.front());
    };

    if (op == "validate") {
      auto d = load_space(docs.at(0));
      auto v = validate(d.space);
      json o;
      o["valid"] = v.empty();
      o["violations"] = v;
      o["space"] = space_json(d);
      if (v.empty() && !d.blowups.empty()) {
        auto r = refine(d);
        std::vector<std::string> fan_v;
        for (const auto& [s, f] : r.fans)
          for (const auto& m : f.violations()) fan_v.push_back(m);
        auto compat = compatibility_violations(r);
        fan_v.insert(fan_v.end(), compat.begin(), compat.end());
        o["refinement_violations"] = fan_v;
        o["valid"] = fan_v.empty();
        res.dot = emit_dot(face_poset(r));
      } else {
        res.dot = emit_dot(d.space);
      }
      res.code = o["valid"].get<bool>() ? 0 : 2;
      res.report = report(op, inputs, o);
    } else if (op == "product") {
      if (docs.empty() && seed) {
        std::mt19937 rng(static_cast<std::mt19937::result_type>(*seed));
        int failures = 0;
        for (int t = 0; t < trials; ++t) {
          auto x = random_space(rng, 3, "h", "X"), y = random_space(rng, 3, "g", "Y");
          x = detail::place(x, variant);
          y = detail::place(y, variant);
          auto pick = [&](std::size_t m) { return static_cast<std::size_t>(rng() % m); };
          auto o = admissible_blowup_order(x, y, pick);
          bool ok = fans_equal(ordered_product_blowup(x, y, o), ordered_product_fan(x, y));
          auto p = product_space(x, y);
          ok = ok && validate(p.space).empty();
          if (!ok) ++failures;
        }
        res.report = report(op, inputs, {{"seed", *seed}, {"trials", trials}, {"failures", failures}});
        res.code = failures == 0 ? 0 : 2;
      } else {
        need_files(2);
        auto x = load_space(docs[0]), y = load_space(docs[1]);
        require_valid(x);
        require_valid(y);
        auto p = product_space(detail::place(x.space, variant), detail::place(y.space, variant));
        auto o = refined_json(p.fan);
        o["space"] = space_json(p.space);
        o["cross_check"] = fans_equal(ordered_product_blowup(p.left, p.right), p.fan);
        res.dot = emit_dot(face_poset(p.fan));
        res.code = o["cross_check"].get<bool>() ? 0 : 2;
        res.report = report(op, inputs, o);
      }
    } else if (op == "join") {
      need_files(2);
      auto x = load_space(docs[0]), y = load_space(docs[1]);
      auto j = join(x.space, y.space, detail::join_variant(variant), detail::cone_side(side));
      json o;
      o["space"] = space_json(j.space);
      o["direct_blowup_agrees"] = j.direct_blowup_agrees;
      json pairs = json::object(), tags = json::object(), direct = json::object();
      for (const auto& [h, pr] : j.pairs) pairs[h] = {pr.left, pr.right};
      for (const auto& [h, t] : j.tags) tags[h] = tag_json(t);
      for (const auto& [h, v] : j.direct_vectors) direct[h] = vector_json(v);
      o["pairs"] = pairs;
      o["tags"] = tags;
      o["direct_vectors"] = direct;
      res.dot = emit_dot(j.space);
      res.code = j.direct_blowup_agrees ? 0 : 2;
      res.report = report(op, inputs, o);
    } else if (op == "cone") {
      auto x = load_space(docs.at(0));
      require_valid(x);
      auto c = relative_cone(x.space, detail::cone_variant(variant), detail::cone_side(side));
      res.dot = emit_dot(c);
      res.report = report(op, inputs, {{"space", space_json(c)}});
    } else if (op == "blowup") {
      auto x = load_space(docs.at(0));
      for (const auto& c : centers) {
        json items = json::array();
        std::stringstream ss(c);
        std::string item;
        while (std::getline(ss, item, ',')) items.push_back(item);
        x.blowups.push_back(center_from_json(items));
      }
      auto r = refine(x);
      auto o = refined_json(r);
      o["space"] = space_json(face_poset_space(r));
      res.dot = emit_dot(face_poset(r));
      res.report = report(op, inputs, o);
    } else if (op == "lift-check") {
      auto m = load_map(docs.at(0));
      auto lifted = lift_through_blowup(m.map, refine(m.codomain));
      json o;
      o["exists"] = lifted.has_value();
      json cols = json::object();
      if (lifted)
        for (const auto& h : lifted->domain().hypersurfaces()) cols[h] = vector_json(lifted->column(h));
      o["columns"] = cols;
      res.code = lifted ? 0 : 2;
      res.report = report(op, inputs, o);
    } else if (op == "sigma-check") {
      auto x = load_space(docs.at(0));
      auto s = sigma_lift(refine(x), parse_combination(sigma));
      json verdicts = json::array();
      for (const auto& v : s.verdicts)
        verdicts.push_back({{"corner", detail::names(v.corner)}, {"cone", v.cone.str()}, {"sign", detail::sign_json(v.verdict)}});
      json van = json::array(), inv = json::array();
      for (const auto& v : s.vanishing) van.push_back(v.str());
      for (const auto& v : s.inverse_vanishing) inv.push_back(v.str());
      res.report = report(op, inputs, {{"sigma", parse_combination(sigma).str()}, {"overall", to_string(s.overall)},
                                       {"cones", verdicts}, {"vanishing", van}, {"inverse_vanishing", inv}});
      res.code = s.overall == SigmaLift::Overall::NotSmooth ? 2 : 0;
    } else if (op == "psub-check") {
      auto x = load_space(docs.at(0));
      auto ss = parse_combinations(sigmas);
      bool ok = psub_lift(refine(x), ss);
      json sj = json::array();
      for (const auto& s : ss) sj.push_back(s.str());
      res.report = report(op, inputs, {{"sigmas", sj}, {"p_submanifold", ok}});
      res.code = ok ? 0 : 2;
    } else if (op == "fiber-product") {
      need_files(2);
      auto f = load_map(docs[0]), g = load_map(docs[1]);
      auto fp = fiber_product(f.map, g.map);
      json poset = json::array(), fun = json::object(), tags = json::object();
      for (const auto& p : fp.poset) poset.push_back(p.str());
      for (const auto& [h, v] : fp.functionals) fun[h] = vector_json(v);
      for (const auto& [h, t] : fp.tags) tags[h] = t == FiberProduct::FaceType::Join ? "join" : "fiber_product";
      res.report = report(op, inputs, {{"poset", poset}, {"functionals", fun}, {"p_submanifold", fp.psub_ok}, {"tags", tags}});
      res.code = fp.psub_ok ? 0 : 2;
    } else if (op == "manybody") {
      auto a = load_arrangement(docs.at(0));
      auto m = mb_space(a);
      json subs = json::array(), fib = json::object();
      for (const auto& s : a.subspaces) subs.push_back(s.label());
      for (const auto& [h, f] : m.fibrations) {
        json fs = json::array();
        for (const auto& s : f.fiber.subspaces) fs.push_back(s.label());
        fib[h] = {{"fiber_dim", f.fiber.ambient_dim}, {"fiber_subspaces", fs},
                  {"fiber_index", detail::names(f.fiber_index)}, {"base_index", detail::names(f.base_index)}};
      }
      res.dot = emit_dot(m.space);
      res.report = report(op, inputs, {{"subspaces", subs}, {"space", space_json(m.space)}, {"fibrations", fib}});
    } else if (op == "mb-product-check") {
      if (docs.empty() && seed) {
        std::mt19937 rng(static_cast<std::mt19937::result_type>(*seed));
        int failures = 0;
        for (int t = 0; t < trials; ++t) {
          auto v = random_arrangement(rng, 2, 5);
          auto w = random_arrangement(rng, 4 - v.ambient_dim, 5);
          if (!mb_product_check(v, w).iso) ++failures;
        }
        res.report = report(op, inputs, {{"seed", *seed}, {"trials", trials}, {"failures", failures}});
        res.code = failures == 0 ? 0 : 2;
      } else {
        need_files(2);
        auto c = mb_product_check(load_arrangement(docs[0]), load_arrangement(docs[1]));
        res.report = report(op, inputs, {{"iso", c.iso}, {"witness", c.witness}, {"hypersurfaces", c.hypersurfaces},
                                         {"problems", c.problems}});
        res.code = c.iso ? 0 : 2;
      }
    } else if (op == "frames-verify") {
      auto r = verify_splitting(parse_frame_kind(kind), n, k);
      res.report = report(op, inputs, {{"table_ok", r.table_ok}, {"images", field_list(r.images)},
                                       {"kernel_frame", field_list(r.kernel_frame)},
                                       {"image_frame", field_list(r.image_frame)}, {"problems", r.problems}});
      res.code = r.table_ok ? 0 : 2;
    }

    std::string text;
    if (format == "dot") {
      if (!res.dot) throw InputError(op + " has no DOT output");
      text = *res.dot;
    } else {
      text = res.report.dump(2) + "\n";
    }
    if (out_path.empty()) {
      out << text;
    } else {
      auto p = output_path(out_path);
      std::ofstream f(p, std::ios::binary);
      if (!f) throw InputError("cannot write " + p.string());
      f << text;
    }
    return res.code;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace corners::io
