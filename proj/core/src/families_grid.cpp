#include <algorithm>
#include <atomic>
#include <exception>
#include <random>
#include <thread>

#include "cyclo/arith.hpp"
#include "cyclo/families.hpp"

namespace cyclo {

namespace {

enum class Kind { Int, Elem, Poly, Text };

struct KeySpec {
  KeySpec(std::string n, Kind k, bool idx = false, std::optional<std::string> fb = std::nullopt)
      : name(std::move(n)), kind(k), indexed(idx), fallback(std::move(fb)) {}

  std::string name;
  Kind kind;
  bool indexed;
  std::optional<std::string> fallback;
};

constexpr std::uint64_t kMaxPoints = 5'000'000;

const std::vector<KeySpec>& schema(FamilyId id) {
  static const std::vector<std::vector<KeySpec>> table = {
      /*F1*/ {{"A0", Kind::Elem}, {"A1", Kind::Elem}, {"f0", Kind::Poly, false, "x"}, {"f1", Kind::Poly, false, "x"}},
      /*F2*/ {{"r0", Kind::Int}, {"r1", Kind::Int}, {"f0", Kind::Poly, false, "1"}, {"f1", Kind::Poly, false, "1"}},
      /*F3*/ {{"t", Kind::Int}, {"r", Kind::Int}, {"corollary", Kind::Int, false, "0"}},
      /*F4*/ {{"alpha", Kind::Elem}, {"beta", Kind::Elem}, {"theta", Kind::Elem}, {"t", Kind::Int}},
      /*F5*/ {{"alpha", Kind::Elem}, {"beta", Kind::Elem}, {"theta", Kind::Elem}, {"t", Kind::Int}},
      /*F6*/
      {{"preset", Kind::Text, false, "cubic3i"},
       {"i", Kind::Int, false, "0"},
       {"j", Kind::Int, false, "0"},
       {"theta", Kind::Elem, false, ""},
       {"beta", Kind::Elem, false, ""},
       {"t", Kind::Int, false, "1"},
       {"A", Kind::Elem, true},
       {"r", Kind::Int, true}},
      /*F7*/ {{"alpha", Kind::Elem}, {"beta", Kind::Elem}, {"gammac", Kind::Elem}, {"theta", Kind::Elem}},
      /*F8*/ {{"A", Kind::Elem, true}, {"r", Kind::Int, true}},
      /*F9*/ {},
      /*F10*/ {{"i", Kind::Int}},
      /*F11*/ {{"ell", Kind::Int}, {"r0", Kind::Int}, {"r1", Kind::Int}, {"A0", Kind::Elem}, {"A1", Kind::Elem}},
      /*F12*/ {{"theta", Kind::Elem}, {"preset", Kind::Text, false, "general"}, {"ell", Kind::Int, false, ""}},
      /*F13*/ {{"ell", Kind::Int}, {"r", Kind::Int, true}, {"g", Kind::Poly, true}},
      /*F14*/ {{"ell", Kind::Int}, {"q0", Kind::Int}, {"r", Kind::Int, true}, {"f", Kind::Poly, true}},
      /*F15*/
      {{"ell", Kind::Int},
       {"q0", Kind::Int},
       {"r", Kind::Int, true},
       {"k", Kind::Int, true},
       {"e", Kind::Int, true},
       {"t", Kind::Int, true}},
      /*F16*/
      {{"ell", Kind::Int},
       {"q0", Kind::Int},
       {"r", Kind::Int, true},
       {"k", Kind::Int, true},
       {"kp", Kind::Int, true},
       {"e", Kind::Int, true},
       {"t", Kind::Int, true},
       {"hhat", Kind::Poly, true, "1"}},
      /*F17*/ {{"ell", Kind::Int}, {"u", Kind::Int, true}, {"r", Kind::Int, true}, {"a", Kind::Elem, true}},
  };
  return table.at(static_cast<std::size_t>(id) - 1);
}

// Number of per-branch entries when it does not depend on ell.
std::optional<std::uint64_t> fixed_count(FamilyId id) {
  if (id == FamilyId::F6 || id == FamilyId::F8) return 3;
  return std::nullopt;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void parse_fail(const std::string& why) { throw Error(ErrorCode::ParseError, why); }

std::uint64_t parse_uint(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    parse_fail("expected a non-negative integer, got '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    parse_fail("integer out of range: '" + text + "'");
  }
}

// "a..b" -> a, a+1, ..., b; anything else is kept.
std::vector<std::string> expand_ranges(const std::vector<std::string>& vals) {
  std::vector<std::string> out;
  for (const auto& v : vals) {
    const auto dots = v.find("..");
    if (dots == std::string::npos) {
      out.push_back(v);
      continue;
    }
    const auto lo = parse_uint(trim(v.substr(0, dots)));
    const auto hi = parse_uint(trim(v.substr(dots + 2)));
    if (hi < lo) parse_fail("empty range '" + v + "'");
    if (hi - lo > kMaxPoints) parse_fail("range too long: '" + v + "'");
    for (auto x = lo; x <= hi; ++x) out.push_back(std::to_string(x));
  }
  return out;
}

// Schema entry for a grid key such as "t", "r", "r2" or "hhat0".
const KeySpec* lookup(FamilyId id, const std::string& key, std::optional<std::uint64_t>* index) {
  for (const auto& spec : schema(id)) {
    if (spec.name == key) {
      if (index) index->reset();
      return &spec;
    }
  }
  for (const auto& spec : schema(id)) {
    if (!spec.indexed || key.size() <= spec.name.size() || key.compare(0, spec.name.size(), spec.name) != 0) continue;
    const auto rest = key.substr(spec.name.size());
    if (!std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; })) continue;
    if (index) *index = std::stoull(rest);
    return &spec;
  }
  if (id == FamilyId::F7 && key == "gamma") return lookup(id, "gammac", index);
  return nullptr;
}

std::vector<std::string> all_nonzero(const Field& f) {
  std::vector<std::string> out;
  for (std::uint32_t c = 1; c < f.q(); ++c) out.push_back(f.format(f.elem(c)));
  return out;
}

std::vector<std::string> elements_of_order(const Field& f, std::uint64_t ell) {
  std::vector<std::string> out;
  const std::uint64_t n = f.q() - 1;
  for (std::uint32_t c = 1; c < f.q(); ++c) {
    const Elem x = f.elem(c);
    if (n / arith::gcd(f.dlog(x), n) == ell) out.push_back(f.format(x));
  }
  return out;
}

const std::string* find(const Assignment& a, const std::string& key) {
  const auto it = a.find(key);
  return it == a.end() ? nullptr : &it->second;
}

class Reader {
 public:
  Reader(FamilyId id, const FieldPtr& f, const Assignment& a) : id_(id), f_(f), a_(a) {
    for (const auto& [k, v] : a) {
      if (!lookup(id, k, nullptr)) throw Error(ErrorCode::InvalidArgument, "unknown parameter '" + k + "' for " + to_string(id));
    }
  }

  std::string text(const std::string& key) const {
    if (const auto* v = find(a_, key)) return *v;
    if (id_ == FamilyId::F7 && key == "gammac") {
      if (const auto* v = find(a_, "gamma")) return *v;
    }
    const auto* spec = lookup(id_, key, nullptr);
    if (spec && spec->fallback) return *spec->fallback;
    throw Error(ErrorCode::InvalidArgument, "missing parameter '" + key + "'");
  }
  std::uint64_t uint(const std::string& key) const { return parse_uint(text(key)); }
  Elem elem(const std::string& key) const { return f_->parse(text(key)); }
  Poly poly(const std::string& key) const { return Poly::parse(f_, text(key)); }

  // Per-branch entry: "r2", else the shared "r".
  std::string indexed_text(const std::string& prefix, std::uint64_t i) const {
    const auto key = prefix + std::to_string(i);
    if (const auto* v = find(a_, key)) return *v;
    return text(prefix);
  }
  std::vector<std::uint64_t> uints(const std::string& prefix, std::uint64_t n) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(parse_uint(indexed_text(prefix, i)));
    return out;
  }
  std::vector<Elem> elems(const std::string& prefix, std::uint64_t n) const {
    std::vector<Elem> out;
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(f_->parse(indexed_text(prefix, i)));
    return out;
  }
  std::vector<Poly> polys(const std::string& prefix, std::uint64_t n) const {
    std::vector<Poly> out;
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(Poly::parse(f_, indexed_text(prefix, i)));
    return out;
  }

 private:
  FamilyId id_;
  const FieldPtr& f_;
  const Assignment& a_;
};

}  // namespace

Grid parse_grid(std::string_view text) {
  Grid g;
  bool have_family = false;
  std::vector<std::string> seen;
  for (const auto& item : split(text, ';')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) parse_fail("grid item '" + item + "' is not key=value");
    const auto key = trim(item.substr(0, eq));
    const auto value = trim(item.substr(eq + 1));
    if (key.empty() || value.empty()) parse_fail("grid item '" + item + "' is incomplete");
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) parse_fail("duplicate grid key '" + key + "'");
    seen.push_back(key);
    if (key == "family") {
      g.family = parse_family_id(value);
      have_family = true;
    } else if (key == "p" || key == "m") {
      auto& dst = key == "p" ? g.p : g.m;
      for (const auto& v : expand_ranges(split(value, ','))) {
        const auto x = parse_uint(v);
        if (x == 0 || x > (key == "p" ? (std::uint64_t{1} << 22) : 22)) parse_fail(key + " value out of range: " + v);
        dst.push_back(static_cast<std::uint32_t>(x));
      }
    } else if (key == "mod") {
      g.modulus = value;
    } else if (key == "samples") {
      g.samples = parse_uint(value);
    } else {
      g.keys.emplace_back(key, split(value, ','));
    }
  }
  if (!have_family) parse_fail("grid names no family");
  for (const auto& [key, vals] : g.keys) {
    if (!lookup(g.family, key, nullptr)) parse_fail("unknown grid key '" + key + "' for " + to_string(g.family));
    if (std::any_of(vals.begin(), vals.end(), [](const std::string& v) { return v.empty(); })) {
      parse_fail("empty value for grid key '" + key + "'");
    }
  }
  return g;
}

std::vector<FieldPtr> grid_fields(const Grid& grid) {
  std::vector<FieldPtr> out;
  if (grid.p.empty()) {
    if (!grid.m.empty() || grid.modulus) throw Error(ErrorCode::InvalidArgument, "grid gives m or mod without p");
    return out;
  }
  const std::vector<std::uint32_t> ms = grid.m.empty() ? std::vector<std::uint32_t>{1} : grid.m;
  if (grid.modulus && (grid.p.size() != 1 || ms.size() != 1)) {
    throw Error(ErrorCode::InvalidArgument, "mod needs a single p and m");
  }
  for (auto p : grid.p) {
    for (auto m : ms) {
      if (grid.modulus) {
        out.push_back(Field::from_descriptor("p=" + std::to_string(p) + ",m=" + std::to_string(m) + ",mod=" + *grid.modulus));
      } else {
        out.push_back(Field::make(p, m));
      }
    }
  }
  return out;
}

std::vector<Assignment> expand_grid(const Grid& grid, const FieldPtr& field, std::uint64_t seed) {
  const FamilyId id = grid.family;
  std::vector<std::optional<std::string>> ells{std::nullopt};
  for (const auto& [k, vals] : grid.keys) {
    if (k == "ell") {
      ells.clear();
      for (const auto& v : expand_ranges(vals)) ells.push_back(v);
    }
  }

  // One list of (key, values) per ell value.
  using Axes = std::vector<std::pair<std::string, std::vector<std::string>>>;
  std::vector<Axes> groups;
  for (const auto& ell : ells) {
    std::optional<std::uint64_t> count = fixed_count(id);
    if (!count && ell && lookup(id, "r", nullptr) && lookup(id, "r", nullptr)->indexed) count = parse_uint(*ell);
    Axes axes;
    for (const auto& [k, raw] : grid.keys) {
      if (k == "ell") {
        axes.push_back({k, {*ell}});
        continue;
      }
      std::optional<std::uint64_t> index;
      const KeySpec* spec = lookup(id, k, &index);
      std::vector<std::string> vals;
      for (const auto& v : raw) {
        if (v != "*") {
          vals.push_back(v);
          continue;
        }
        if (spec->kind != Kind::Elem) parse_fail("'*' is only allowed for field-element keys, not '" + k + "'");
        const auto all = (id == FamilyId::F12 && spec->name == "theta" && ell)
                             ? elements_of_order(*field, parse_uint(*ell))
                             : all_nonzero(*field);
        vals.insert(vals.end(), all.begin(), all.end());
      }
      if (spec->kind == Kind::Int) vals = expand_ranges(vals);
      if (vals.empty()) return {};
      if (spec->indexed && !index && count) {
        for (std::uint64_t i = 0; i < *count; ++i) axes.push_back({k + std::to_string(i), vals});
      } else {
        axes.push_back({k, vals});
      }
    }
    groups.push_back(std::move(axes));
  }

  std::vector<Assignment> out;
  if (grid.samples) {
    std::mt19937_64 rng(seed);
    for (std::uint64_t n = 0; n < *grid.samples; ++n) {
      const auto& axes = groups[std::uniform_int_distribution<std::size_t>(0, groups.size() - 1)(rng)];
      Assignment a;
      for (const auto& [k, vals] : axes) a[k] = vals[std::uniform_int_distribution<std::size_t>(0, vals.size() - 1)(rng)];
      out.push_back(std::move(a));
    }
    return out;
  }
  std::uint64_t total = 0;
  for (const auto& axes : groups) {
    std::uint64_t size = 1;
    for (const auto& axis : axes) {
      size *= axis.second.size();
      if (size > kMaxPoints) break;
    }
    total += size;
    if (total > kMaxPoints) {
      throw Error(ErrorCode::InvalidArgument, "grid has more than " + std::to_string(kMaxPoints) + " points; use samples=N");
    }
  }
  out.reserve(total);
  for (const auto& axes : groups) {
    std::vector<std::size_t> pos(axes.size(), 0);
    bool more = true;
    while (more) {
      Assignment a;
      for (std::size_t i = 0; i < axes.size(); ++i) a[axes[i].first] = axes[i].second[pos[i]];
      out.push_back(std::move(a));
      // Odometer step, last axis fastest.
      more = false;
      for (std::size_t i = axes.size(); i-- > 0;) {
        if (++pos[i] < axes[i].second.size()) {
          more = true;
          break;
        }
        pos[i] = 0;
      }
    }
  }
  return out;
}

FamilyParams params_from_assignment(FamilyId id, const FieldPtr& field, const Assignment& a) {
  const Reader r(id, field, a);
  switch (id) {
    case FamilyId::F1:
      return F1Params{r.elem("A0"), r.elem("A1"), r.poly("f0"), r.poly("f1")};
    case FamilyId::F2:
      return F2Params{r.uint("r0"), r.uint("r1"), r.poly("f0"), r.poly("f1")};
    case FamilyId::F3:
      return F3Params{r.uint("t"), r.uint("r"), r.uint("corollary") != 0};
    case FamilyId::F4:
      return F4Params{r.elem("alpha"), r.elem("beta"), r.elem("theta"), r.uint("t")};
    case FamilyId::F5:
      return F5Params{r.elem("alpha"), r.elem("beta"), r.elem("theta"), r.uint("t")};
    case FamilyId::F6: {
      F6Params p;
      p.preset = parse_f6_preset(r.text("preset"));
      p.i = r.uint("i");
      p.j = r.uint("j");
      p.t = r.uint("t");
      if (find(a, "theta")) p.theta = r.elem("theta");
      if (find(a, "beta")) p.beta = r.elem("beta");
      if (p.preset == F6Preset::ThreeBranchEqual) {
        p.consts = r.elems("A", 3);
        p.exps = r.uints("r", 3);
      }
      return p;
    }
    case FamilyId::F7:
      return F7Params{r.elem("alpha"), r.elem("beta"), r.elem("gammac"), r.elem("theta")};
    case FamilyId::F8:
      return F8Params{r.elems("A", 3), r.uints("r", 3)};
    case FamilyId::F9:
      return F9Params{};
    case FamilyId::F10:
      return F10Params{r.uint("i")};
    case FamilyId::F11:
      return F11Params{r.uint("ell"), r.uint("r0"), r.uint("r1"), r.elem("A0"), r.elem("A1")};
    case FamilyId::F12: {
      F12Params p{r.elem("theta"), parse_f12_preset(r.text("preset"))};
      return p;
    }
    case FamilyId::F13: {
      const auto ell = r.uint("ell");
      return F13Params{ell, r.uints("r", ell), r.polys("g", ell)};
    }
    case FamilyId::F14: {
      const auto ell = r.uint("ell");
      return F14Params{ell, r.uint("q0"), r.uints("r", ell), r.polys("f", ell)};
    }
    case FamilyId::F15: {
      const auto ell = r.uint("ell");
      return F15Params{ell, r.uint("q0"), r.uints("r", ell), r.uints("k", ell), r.uints("e", ell), r.uints("t", ell)};
    }
    case FamilyId::F16: {
      const auto ell = r.uint("ell");
      return F16Params{ell,           r.uint("q0"),       r.uints("r", ell),     r.uints("k", ell),
                       r.uints("kp", ell), r.uints("e", ell), r.uints("t", ell), r.polys("hhat", ell)};
    }
    case FamilyId::F17: {
      const auto ell = r.uint("ell");
      return F17Params{ell, r.uints("u", ell), r.uints("r", ell), r.elems("a", ell)};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

std::string to_string(const Assignment& a) {
  std::string out;
  for (const auto& [k, v] : a) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

SweepSummary& SweepSummary::operator+=(const SweepSummary& other) {
  points += other.points;
  skipped += other.skipped;
  predicted_pp += other.predicted_pp;
  brute_pp += other.brute_pp;
  disagreements += other.disagreements;
  iff = iff && other.iff;
  if (!first_disagreement) first_disagreement = other.first_disagreement;
  if (!first_skip_reason) first_skip_reason = other.first_skip_reason;
  return *this;
}

SweepSummary sweep_family(const FieldPtr& field, const Grid& grid, std::uint64_t seed) {
  const auto points = expand_grid(grid, field, seed);
  struct Outcome {
    bool skipped = false;
    bool predicted = false;
    bool brute = false;
    bool iff = true;
    std::string skip_reason;
    std::exception_ptr error;
  };
  std::vector<Outcome> outcomes(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      auto& o = outcomes[i];
      try {
        const auto params = params_from_assignment(grid.family, field, points[i]);
        const auto res = construct_family(field, params, true);
        o.predicted = res.predicted;
        o.brute = res.brute->is_bijection;
        o.iff = res.iff;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::DomainCheckFailed) {
          o.skipped = true;
          o.skip_reason = e.what();
        } else {
          o.error = std::current_exception();
        }
      } catch (...) {
        o.error = std::current_exception();
      }
    }
  };
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t nthreads = std::min(hw, points.size() / 16 + 1);
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < nthreads; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  SweepSummary s;
  s.points = points.size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& o = outcomes[i];
    if (o.error) std::rethrow_exception(o.error);
    if (o.skipped) {
      ++s.skipped;
      if (!s.first_skip_reason) s.first_skip_reason = to_string(points[i]) + ": " + o.skip_reason;
      continue;
    }
    s.iff = s.iff && o.iff;
    s.predicted_pp += o.predicted;
    s.brute_pp += o.brute;
    const bool bad = o.iff ? o.predicted != o.brute : (o.predicted && !o.brute);
    if (bad) {
      ++s.disagreements;
      if (!s.first_disagreement) {
        s.first_disagreement = field->descriptor() + " " + to_string(points[i]) + ": predicted " +
                               (o.predicted ? "PP" : "not PP") + ", brute force " + (o.brute ? "PP" : "not PP");
      }
    }
  }
  return s;
}

SweepSummary sweep_family(FamilyId id, const FieldPtr& field, const Grid& grid, std::uint64_t seed) {
  Grid g = grid;
  g.family = id;
  return sweep_family(field, g, seed);
}

}  // namespace cyclo
