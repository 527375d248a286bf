#include "morsekit/gen.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "morsekit/error.hpp"

namespace morsekit {

namespace {

// mt19937_64 is fully specified by the standard; the distributions are not,
// so bounded draws are done by hand to keep corpora identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
  }

 private:
  std::mt19937_64 engine_;
};

struct Spec {
  std::vector<std::pair<std::string, int>> points;  // name, degree
  std::vector<Rational> values;
  std::vector<std::tuple<std::size_t, std::size_t, int>> boundary;  // source, target, coeff
};

FilteredComplex build(int ambient, const Spec& s) {
  std::vector<CriticalPoint> pts;
  for (std::size_t i = 0; i < s.points.size(); ++i)
    pts.push_back({s.points[i].first, s.points[i].second, s.values[i]});
  std::vector<BoundaryEntry> entries;
  for (const auto& [src, tgt, coeff] : s.boundary) entries.push_back({src, tgt, Integer(coeff)});
  return FilteredComplex(ambient, std::move(pts), entries);
}

// Five-point complexes in ambient dimension 2n = 4; indices into the point
// list below.
enum : std::size_t { kXi1Nm1, kXi1N, kXi2N, kXi3N, kXi1Np1 };
enum : std::size_t { kEta1, kEta2, kC1, kC2, kC3 };

Spec laudenbach_like() {
  return {{{"xi1_nm1", 1}, {"xi1_n", 2}, {"xi2_n", 2}, {"xi3_n", 2}, {"xi1_np1", 3}},
          {0, 1, 2, 3, 4},
          {}};
}

Spec capitanio_like() {
  return {{{"xi1_nm1", 1}, {"xi2_nm1", 1}, {"xi1_n", 2}, {"xi2_n", 2}, {"xi3_n", 2}},
          {0, 1, 2, 3, 4},
          {}};
}

}  // namespace

FixtureName FixtureName::parse(std::string_view text) {
  if (text == "laudenbach") return {FixtureKind::Laudenbach, 0, 0, 4};
  if (text == "f0") return {FixtureKind::F0, 0, 0, 4};
  if (text == "capitanio_v") return {FixtureKind::CapitanioV, 0, 0, 4};
  if (text == "capitanio_vprime") return {FixtureKind::CapitanioVPrime, 0, 0, 4};
  const std::string_view prefix = "single:";
  if (text.substr(0, prefix.size()) == prefix) {
    std::vector<std::string_view> parts;
    std::string_view rest = text.substr(prefix.size());
    while (true) {
      const auto colon = rest.find(':');
      parts.push_back(rest.substr(0, colon));
      if (colon == std::string_view::npos) break;
      rest.remove_prefix(colon + 1);
    }
    if (parts.size() == 3) {
      auto deg = parse_integer(parts[0]);
      auto value = parse_rational(parts[1]);
      auto amb = parse_integer(parts[2]);
      if (deg && value && amb && deg->fits_sint_p() && amb->fits_sint_p() && *amb > 0 &&
          *deg >= 0 && *deg <= *amb)
        return {FixtureKind::Single, static_cast<int>(deg->get_si()), *value,
                static_cast<int>(amb->get_si())};
    }
  }
  throw Error(ErrorCode::UnknownFixture,
              "unknown fixture '" + std::string(text) +
                  "' (expected laudenbach, f0, capitanio_v, capitanio_vprime or "
                  "single:<degree>:<value>:<ambient>)");
}

std::string FixtureName::to_string() const {
  switch (kind) {
    case FixtureKind::Laudenbach: return "laudenbach";
    case FixtureKind::F0: return "f0";
    case FixtureKind::CapitanioV: return "capitanio_v";
    case FixtureKind::CapitanioVPrime: return "capitanio_vprime";
    case FixtureKind::Single:
      return "single:" + std::to_string(degree) + ":" + morsekit::to_string(value) + ":" +
             std::to_string(ambient);
  }
  return "?";
}

std::vector<std::string> fixture_names() {
  return {"laudenbach", "f0", "capitanio_v", "capitanio_vprime"};
}

FilteredComplex fixture(const FixtureName& name) {
  switch (name.kind) {
    case FixtureKind::Laudenbach: {
      Spec s = laudenbach_like();
      s.boundary = {{kXi1N, kXi1Nm1, 1},
                    {kXi2N, kXi1Nm1, -2},
                    {kXi3N, kXi1Nm1, -1},
                    {kXi1Np1, kXi2N, 1},
                    {kXi1Np1, kXi3N, -2}};
      return build(4, s);
    }
    case FixtureKind::F0: {
      Spec s = laudenbach_like();
      s.boundary = {{kXi1N, kXi1Nm1, 1}, {kXi1Np1, kXi3N, 1}};
      return build(4, s);
    }
    case FixtureKind::CapitanioV: {
      Spec s = capitanio_like();
      s.boundary = {{kC1, kEta2, 1}, {kC2, kEta1, 1}};
      return build(4, s);
    }
    case FixtureKind::CapitanioVPrime: {
      Spec s = capitanio_like();
      s.boundary = {{kC1, kEta2, 1}, {kC1, kEta1, 1}, {kC2, kEta2, 1},
                    {kC2, kEta1, 2}, {kC3, kEta1, 1}};
      return build(4, s);
    }
    case FixtureKind::Single:
      return FilteredComplex(name.ambient, {{"xi", name.degree, name.value}});
  }
  throw Error(ErrorCode::UnknownFixture, "unknown fixture");
}

FilteredComplex fixture(std::string_view name) {
  return fixture(FixtureName::parse(name));
}

// ---------------------------------------------------------------------------
// Random complexes

std::size_t ComplexShape::total() const {
  std::size_t n = 0;
  for (const auto& [k, m] : sizes) n += m;
  return n;
}

std::vector<std::size_t> pair_counts(const ComplexShape& shape) {
  auto infeasible = [](const std::string& why) {
    return Error(ErrorCode::InfeasibleSizes, "infeasible sizes: " + why);
  };
  if (shape.ambient < 0) throw infeasible("negative ambient dimension");
  if (shape.free_degree < 0 || shape.free_degree > shape.ambient)
    throw infeasible("free degree outside [0, ambient]");
  for (const auto& [k, m] : shape.sizes)
    if ((k < 0 || k > shape.ambient) && m > 0)
      throw infeasible("degree " + std::to_string(k) + " outside [0, ambient]");

  // m_k = e_k + e_{k+1} + [k = λ], e_0 = e_{ambient+1} = 0.
  const auto count = [&](int k) -> long {
    auto it = shape.sizes.find(k);
    return it == shape.sizes.end() ? 0 : static_cast<long>(it->second);
  };
  std::vector<std::size_t> e(static_cast<std::size_t>(shape.ambient) + 2, 0);
  long below = 0;
  for (int k = 0; k <= shape.ambient; ++k) {
    const long next = count(k) - below - (k == shape.free_degree ? 1 : 0);
    if (next < 0)
      throw infeasible("degree " + std::to_string(k) + " has too few points to pair");
    e[static_cast<std::size_t>(k) + 1] = static_cast<std::size_t>(next);
    below = next;
  }
  if (below != 0)
    throw infeasible("top degree leaves " + std::to_string(below) + " unpaired points");
  return e;
}

std::vector<IntMatrix> random_unimodular_basis(const FilteredComplex& c, std::uint64_t seed,
                                               int max_entry) {
  Rng rng(seed);
  std::vector<IntMatrix> out;
  for (int k = 0; k <= std::max(c.ambient_dim(), c.max_degree()); ++k) {
    const std::size_t m = c.points_of_degree(k).size();
    IntMatrix p(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      p(i, i) = rng.uniform(0, 1) ? 1 : -1;
      for (std::size_t j = i + 1; j < m; ++j)
        if (rng.uniform(0, 1)) p(i, j) = static_cast<long>(rng.uniform(-max_entry, max_entry));
    }
    out.push_back(std::move(p));
  }
  return out;
}

GeneratedComplex random_complex(std::uint64_t seed, const ComplexShape& shape) {
  const auto e = pair_counts(shape);
  Rng rng(seed);

  std::vector<CriticalPoint> points;
  std::map<int, std::vector<PointId>> by_degree;
  for (int k = 0; k <= shape.ambient; ++k) {
    auto it = shape.sizes.find(k);
    const std::size_t m = it == shape.sizes.end() ? 0 : it->second;
    for (std::size_t i = 0; i < m; ++i) {
      by_degree[k].push_back(points.size());
      points.push_back({"p" + std::to_string(k) + "_" + std::to_string(i), k, 0});
    }
  }

  // Roles within each degree: [uppers paired downward | lowers paired upward | free].
  std::map<int, std::vector<PointId>> uppers, lowers;
  PointId free_point = 0;
  for (auto& [k, ids] : by_degree) {
    rng.shuffle(ids);
    const std::size_t down = e[static_cast<std::size_t>(k)];
    const std::size_t up = e[static_cast<std::size_t>(k) + 1];
    uppers[k].assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(down));
    lowers[k].assign(ids.begin() + static_cast<std::ptrdiff_t>(down),
                     ids.begin() + static_cast<std::ptrdiff_t>(down + up));
    if (k == shape.free_degree) free_point = ids.back();
  }

  std::vector<std::pair<PointId, PointId>> matching;
  for (int k = 1; k <= shape.ambient; ++k) {
    auto& u = uppers[k];
    auto& l = lowers[k - 1];
    rng.shuffle(l);
    for (std::size_t i = 0; i < u.size(); ++i) matching.emplace_back(u[i], l[i]);
  }

  // Distinct values p/den; each pair takes two, the upper the larger one.
  const std::size_t n = points.size();
  const auto span = static_cast<std::int64_t>(4 * n + 4);
  const std::int64_t den = rng.uniform(1, 4);
  std::set<std::int64_t> drawn;
  std::vector<std::int64_t> numerators;
  while (numerators.size() < n) {
    const std::int64_t x = rng.uniform(-span, span);
    if (drawn.insert(x).second) numerators.push_back(x);
  }
  std::size_t next = 0;
  auto take = [&]() { return Rational(Integer(static_cast<long>(numerators[next++])), Integer(static_cast<long>(den))); };
  for (auto& [upper, lower] : matching) {
    Rational a = take(), b = take();
    a.canonicalize();
    b.canonicalize();
    if (a < b) std::swap(a, b);
    points[upper].value = a;
    points[lower].value = b;
  }
  if (n > 0) {
    points[free_point].value = take();
    points[free_point].value.canonicalize();
  }

  std::vector<BoundaryEntry> entries;
  for (const auto& [upper, lower] : matching) entries.push_back({upper, lower, 1});

  GeneratedComplex out;
  out.free_point = n > 0 ? points[free_point].name : std::string();
  for (const auto& [upper, lower] : matching)
    out.pairs.emplace_back(points[upper].name, points[lower].name);
  const FilteredComplex normal(shape.ambient, std::move(points), entries);
  out.complex = change_basis(normal, random_unimodular_basis(normal, rng.uniform(0, INT64_MAX)));
  return out;
}

ComplexShape random_shape(std::uint64_t seed, std::size_t max_points, int max_ambient) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  ComplexShape shape;
  shape.ambient = static_cast<int>(rng.uniform(1, std::max(1, max_ambient)));
  shape.free_degree = static_cast<int>(rng.uniform(0, shape.ambient));
  const std::size_t budget = max_points == 0 ? 0 : (max_points - 1) / 2;
  const auto total_pairs = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(budget)));
  std::vector<std::size_t> e(static_cast<std::size_t>(shape.ambient) + 2, 0);
  for (std::size_t i = 0; i < total_pairs; ++i)
    ++e[static_cast<std::size_t>(rng.uniform(1, shape.ambient))];
  for (int k = 0; k <= shape.ambient; ++k) {
    const std::size_t m = e[static_cast<std::size_t>(k)] + e[static_cast<std::size_t>(k) + 1] +
                          (k == shape.free_degree ? 1 : 0);
    if (m > 0) shape.sizes[k] = m;
  }
  return shape;
}

namespace {

std::vector<BoundaryEntry> entries_of(const FilteredComplex& c) {
  std::vector<BoundaryEntry> out;
  for (PointId s = 0; s < c.size(); ++s)
    for (const auto& t : c.boundary(s)) out.push_back({s, t.target, t.coeff});
  return out;
}

}  // namespace

FilteredComplex rearrange_values(const FilteredComplex& c, std::uint64_t seed,
                                 std::size_t attempts) {
  Rng rng(seed);
  std::vector<CriticalPoint> points(c.points().begin(), c.points().end());
  std::vector<std::vector<PointId>> down(c.size()), up(c.size());
  for (PointId s = 0; s < c.size(); ++s)
    for (const auto& t : c.boundary(s)) {
      down[s].push_back(t.target);
      up[t.target].push_back(s);
    }
  auto consistent = [&](PointId p) {
    for (PointId t : down[p])
      if (!(points[p].value > points[t].value)) return false;
    for (PointId s : up[p])
      if (!(points[s].value > points[p].value)) return false;
    return true;
  };

  std::vector<int> degrees;
  for (int k = c.min_degree(); k <= c.max_degree(); ++k)
    if (c.points_of_degree(k).size() >= 2) degrees.push_back(k);
  if (degrees.empty()) return c;

  for (std::size_t i = 0; i < attempts; ++i) {
    const int k = degrees[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(degrees.size()) - 1))];
    const auto ids = c.points_of_degree(k);
    const auto a = ids[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(ids.size()) - 1))];
    const auto b = ids[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(ids.size()) - 1))];
    if (a == b) continue;
    std::swap(points[a].value, points[b].value);
    if (!consistent(a) || !consistent(b)) std::swap(points[a].value, points[b].value);
  }
  return FilteredComplex(c.ambient_dim(), std::move(points), entries_of(c));
}

std::optional<Rational> minimum_gap(const FilteredComplex& c) {
  if (c.size() < 2) return std::nullopt;
  std::vector<Rational> values;
  for (const auto& p : c.points()) values.push_back(p.value);
  std::sort(values.begin(), values.end());
  Rational gap = values[1] - values[0];
  for (std::size_t i = 2; i < values.size(); ++i) gap = std::min(gap, Rational(values[i] - values[i - 1]));
  return gap;
}

FilteredComplex perturb_values(const FilteredComplex& c, const Rational& eps, std::uint64_t seed) {
  if (eps < 0) throw Error(ErrorCode::EpsilonTooLarge, "epsilon must be nonnegative");
  if (const auto gap = minimum_gap(c); gap && !(eps < *gap / 2))
    throw Error(ErrorCode::EpsilonTooLarge, "epsilon " + to_string(eps) +
                                                " is not below half the minimum gap " +
                                                to_string(Rational(*gap / 2)));
  constexpr long kSteps = 1000;
  Rng rng(seed);
  std::vector<CriticalPoint> points(c.points().begin(), c.points().end());
  for (auto& p : points) {
    const Rational shift = eps * Rational(rng.uniform(-kSteps, kSteps), kSteps);
    p.value += shift;
  }
  return FilteredComplex(c.ambient_dim(), std::move(points), entries_of(c));
}

}  // namespace morsekit
