#include "cyclo/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cyclo/criteria.hpp"
#include "cyclo/families.hpp"

namespace cyclo::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string field;
  std::string poly;
  std::string map;
  std::uint64_t ell = 0;
  std::string family;
  std::string grid;
  std::string params;
  std::string exps;
  std::string consts;
  std::string out;
  std::uint64_t seed = 0;
  bool json = false;
  std::optional<bool> brute;
};

// Thrown for bad flag combinations; reported like a parse error.
struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Output sink: JSON document or "key: value" lines carrying the same data.
class Report {
 public:
  explicit Report(bool as_json) : as_json_(as_json) {}

  json& doc() { return doc_; }

  std::string str() const {
    if (as_json_) return doc_.dump(2) + "\n";
    std::ostringstream os;
    write_lines(os, doc_, "");
    return os.str();
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_null()) return "none";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  }

  static void write_lines(std::ostream& os, const json& v, const std::string& prefix) {
    if (v.is_object()) {
      for (const auto& [k, item] : v.items()) write_lines(os, item, prefix.empty() ? k : prefix + "." + k);
    } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const json& x) { return x.is_structured(); })) {
      for (std::size_t i = 0; i < v.size(); ++i) write_lines(os, v[i], prefix + "[" + std::to_string(i) + "]");
    } else if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos) {
      std::istringstream lines(v.get<std::string>());
      std::string line;
      while (std::getline(lines, line)) os << prefix << ": " << line << "\n";
    } else {
      os << prefix << ": " << scalar(v) << "\n";
    }
  }

  bool as_json_;
  json doc_ = json::object();
};

FieldPtr need_field(const Options& o) {
  if (o.field.empty()) throw Usage("--field is required");
  return Field::from_descriptor(o.field);
}

Poly need_poly(const Options& o, const FieldPtr& f) {
  if (o.poly.empty()) throw Usage("--poly is required");
  return Poly::parse(f, o.poly);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split_list(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

std::vector<std::uint64_t> parse_exps(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& v : split_list(text)) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorCode::ParseError, "bad exponent '" + v + "'");
    }
    out.push_back(std::stoull(v));
  }
  return out;
}

json field_json(const Field& f) {
  json j;
  j["p"] = f.p();
  j["m"] = f.m();
  j["q"] = f.q();
  j["descriptor"] = f.descriptor();
  j["gamma"] = f.format(f.gamma());
  j["gamma_coeffs"] = f.gamma().coeffs();
  return j;
}

std::string collision_text(const Field& f, const BijectionReport& r) {
  if (r.collision) return "f(" + f.format(r.collision->first) + ") = f(" + f.format(r.collision->second) + ")";
  if (r.missed) return f.format(*r.missed) + " is not attained";
  return {};
}

int cmd_field(const Options& o, Report& rep) {
  const auto f = need_field(o);
  rep.doc() = field_json(*f);
  return kExitOk;
}

int cmd_verify(const Options& o, Report& rep) {
  const auto f = need_field(o);
  const Poly p = need_poly(o, f).canonical();
  const bool brute = o.brute.value_or(true);

  Verdict v;
  std::optional<bool> oracle;
  if (brute) {
    const auto r = is_bijection_brute(p);
    oracle = r.is_bijection;
    v.conditions.emplace_back("brute", r.is_bijection);
    if (!r.is_bijection) v.witness = collision_text(*f, r);
  }
  std::optional<bool> criterion;
  if (o.ell != 0) {
    const auto cs = make_cosets(f, o.ell);
    if (p.coeff(0).is_zero() && !p.is_zero()) {
      if (auto spec = monomial_spec(poly_to_map(p, cs))) {
        bool nonzero = std::none_of(spec->consts.begin(), spec->consts.end(), [](Elem c) { return c.is_zero(); });
        if (nonzero) {
          const auto c = check_main2(*spec);
          for (const auto& cond : c.conditions) v.conditions.push_back(cond);
          criterion = c.is_pp;
          if (!v.witness) v.witness = c.witness;
        }
      }
    }
  }
  if (!oracle && !criterion) {
    throw Usage("--brute=false needs --ell with a polynomial that is a monomial cyclotomic map");
  }
  v.is_pp = oracle ? *oracle : *criterion;
  if (v.is_pp) v.witness.reset();
  rep.doc() = json::parse(v.to_json());
  return v.is_pp ? kExitOk : kExitNotPP;
}

int cmd_convert(const Options& o, Report& rep) {
  const auto f = need_field(o);
  if (!o.poly.empty() == !o.map.empty()) throw Usage("convert takes exactly one of --poly and --map");
  if (!o.poly.empty()) {
    if (o.ell == 0) throw Usage("--ell is required to convert a polynomial");
    const auto m = poly_to_map(Poly::parse(f, o.poly), make_cosets(f, o.ell));
    rep.doc()["map"] = m.to_string();
  } else {
    const auto m = CycloMap::parse(f, o.map);
    rep.doc()["poly"] = map_to_poly(m).to_string();
  }
  return kExitOk;
}

int cmd_index(const Options& o, Report& rep) {
  const auto f = need_field(o);
  const auto form = index_of(need_poly(o, f));
  auto& j = rep.doc();
  j["ell"] = form.ell;
  j["r"] = form.r;
  j["s"] = form.s;
  j["a"] = f->format(form.a);
  j["b"] = f->format(form.b);
  j["f"] = form.f(f).to_string();
  return kExitOk;
}

json family_json(const Field& f, const FamilyResult& r) {
  json j;
  j["family"] = to_string(r.id);
  j["poly"] = r.poly.to_string();
  j["map"] = r.map.to_string();
  j["offset"] = f.format(r.offset);
  j["predicted_pp"] = r.predicted;
  j["iff"] = r.iff;
  j["brute_pp"] = r.brute ? json(r.brute->is_bijection) : json(nullptr);
  return j;
}

int cmd_construct(const Options& o, Report& rep) {
  const auto f = need_field(o);
  if (!o.family.empty()) {
    Assignment a;
    for (const auto& item : split_list(o.params, ';')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "parameter '" + item + "' is not key=value");
      a[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
    const auto id = parse_family_id(o.family);
    const auto r = construct_family(f, params_from_assignment(id, f, a), o.brute.value_or(false));
    rep.doc() = family_json(*f, r);
    return kExitOk;
  }
  if (o.ell == 0 || o.exps.empty() || o.consts.empty()) {
    throw Usage("construct needs --family, or --ell with --exps and --consts");
  }
  std::vector<Elem> consts;
  for (const auto& c : split_list(o.consts)) consts.push_back(f->parse(c));
  const auto c = construct_from_data(make_cosets(f, o.ell), parse_exps(o.exps), consts);
  auto& j = rep.doc();
  j["poly"] = c.poly.to_string();
  j["map"] = c.map.to_string();
  j["verdict"] = json::parse(c.verdict.to_json());
  if (o.brute.value_or(false)) j["brute_pp"] = is_bijection_brute(c.poly).is_bijection;
  return kExitOk;
}

json summary_json(const SweepSummary& s) {
  json j;
  j["points"] = s.points;
  j["skipped"] = s.skipped;
  j["evaluated"] = s.evaluated();
  j["predicted_pp"] = s.predicted_pp;
  j["brute_pp"] = s.brute_pp;
  j["disagreements"] = s.disagreements;
  j["iff"] = s.iff;
  j["first_disagreement"] = s.first_disagreement ? json(*s.first_disagreement) : json(nullptr);
  j["first_skip_reason"] = s.first_skip_reason ? json(*s.first_skip_reason) : json(nullptr);
  return j;
}

int cmd_sweep(const Options& o, Report& rep) {
  if (o.grid.empty()) throw Usage("--grid is required");
  std::string text = o.grid;
  if (!o.family.empty()) {
    // --family supplies or overrides the grid's family entry.
    text = "family=" + o.family;
    for (const auto& item : split_list(o.grid, ';')) {
      if (trim(item.substr(0, item.find('='))) != "family") text += ";" + item;
    }
  }
  const Grid grid = parse_grid(text);
  std::vector<FieldPtr> fields = grid_fields(grid);
  if (!o.field.empty()) {
    if (!fields.empty()) throw Usage("give the field either with --field or in the grid, not both");
    fields.push_back(Field::from_descriptor(o.field));
  }
  if (fields.empty()) throw Usage("sweep needs --field or p=... in the grid");

  SweepSummary total;
  json per_field = json::array();
  for (const auto& f : fields) {
    const auto s = sweep_family(f, grid, o.seed);
    json j = summary_json(s);
    j["field"] = f->descriptor();
    per_field.push_back(std::move(j));
    total += s;
  }
  auto& doc = rep.doc();
  doc["family"] = to_string(grid.family);
  doc["seed"] = o.seed;
  doc["fields"] = per_field;
  doc["total"] = summary_json(total);
  return total.disagreements == 0 ? kExitOk : kExitNotPP;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cyclotomic mappings and permutation polynomials over finite fields"};
  app.footer(
      "Exit codes: 0 success; 1 verify found no permutation (or sweep found a disagreement); "
      "2 usage, parse or domain error.");
  app.require_subcommand(1, 1);
  Options o;

  auto add_field = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--field", o.field, "Field descriptor, e.g. p=3,m=2 or p=2,m=3,mod=[1,1,0,1]");
    if (required) opt->required();
  };
  auto add_common = [&](CLI::App* c) {
    c->add_flag("--json", o.json, "Emit one JSON document");
    c->add_option("--out", o.out, "Write the report to this path instead of stdout");
  };

  auto* field = app.add_subcommand("field", "Print q, the modulus and the primitive element");
  add_field(field, true);
  add_common(field);

  auto* verify = app.add_subcommand("verify", "Decide whether a polynomial permutes the field");
  add_field(verify, true);
  verify->add_option("--poly", o.poly, "Polynomial, e.g. \"x^5 + 2*x\"")->required();
  verify->add_option("--ell", o.ell, "Also apply the criterion for this index when the map is monomial");
  verify->add_option("--brute", o.brute, "Run the exhaustive check (default true)");
  add_common(verify);

  auto* convert = app.add_subcommand("convert", "Convert between a polynomial and a cyclotomic map");
  add_field(convert, true);
  convert->add_option("--poly", o.poly, "Polynomial to read as a map (needs --ell)");
  convert->add_option("--map", o.map, "Map text \"ell=2; branch[0]=1 * (x); branch[1]=2 * (x^3)\"");
  convert->add_option("--ell", o.ell, "Index of the coset structure");
  add_common(convert);

  auto* index = app.add_subcommand("index", "Index of a polynomial");
  add_field(index, true);
  index->add_option("--poly", o.poly, "Polynomial")->required();
  add_common(index);

  auto* construct = app.add_subcommand("construct", "Build a polynomial from map data or a family");
  add_field(construct, true);
  construct->add_option("--ell", o.ell, "Index");
  construct->add_option("--exps", o.exps, "Branch exponents r_0,...,r_(ell-1)");
  construct->add_option("--consts", o.consts, "Branch constants A_0,...,A_(ell-1)");
  construct->add_option("--family", o.family, "Family id F1..F17");
  construct->add_option("--params", o.params, "Family parameters \"alpha=1;beta=2;theta=1;t=3\"");
  construct->add_option("--brute", o.brute, "Also run the exhaustive check (default false)");
  add_common(construct);

  auto* sweep = app.add_subcommand("sweep", "Compare a family's prediction with brute force over a grid");
  add_field(sweep, false);
  sweep->add_option("--grid", o.grid, "Grid, e.g. \"family=F4;p=3;m=2;alpha=*;beta=*;theta=*;t=1,2,3\"")->required();
  sweep->add_option("--family", o.family, "Family id, overriding the grid's");
  sweep->add_option("--seed", o.seed, "Seed for samples=N grids (default 0)");
  add_common(sweep);

  std::vector<std::string> argv_store{"cyclo"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    err << "error: " << msg.substr(0, msg.find('\n')) << "\n";
    return kExitUsage;
  }

  Report rep(o.json);
  int code = kExitOk;
  try {
    if (field->parsed()) code = cmd_field(o, rep);
    if (verify->parsed()) code = cmd_verify(o, rep);
    if (convert->parsed()) code = cmd_convert(o, rep);
    if (index->parsed()) code = cmd_index(o, rep);
    if (construct->parsed()) code = cmd_construct(o, rep);
    if (sweep->parsed()) code = cmd_sweep(o, rep);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    err << "error: " << msg.substr(0, msg.find('\n')) << "\n";
    return kExitUsage;
  }

  const std::string text = rep.str();
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out);
    if (!(file << text)) {
      err << "error: cannot write " << o.out << "\n";
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace cyclo::cli
