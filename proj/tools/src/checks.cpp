#include "morsekit/cli/checks.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "morsekit/barannikov.hpp"
#include "morsekit/gen.hpp"
#include "morsekit/oracle.hpp"
#include "morsekit/selector.hpp"

namespace morsekit::cli {

namespace {

std::string show(const FilteredComplex& c, const SelectorValue& v) {
  return to_string(v.value) + " (" + c.point(v.point).name + ")";
}

std::string names(const FilteredComplex& c, const std::vector<PointId>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? ", " : "") + c.point(ids[i]).name;
  return out + "}";
}

class Recorder {
 public:
  explicit Recorder(std::vector<CheckResult>& sink) : sink_(sink) {}

  template <class F>
  void operator()(std::string name, F&& body) {
    CheckResult r{std::move(name), false, {}};
    try {
      std::ostringstream detail;
      r.passed = body(detail);
      r.detail = detail.str();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    sink_.push_back(std::move(r));
  }

 private:
  std::vector<CheckResult>& sink_;
};

const std::vector<Coefficients>& fields() {
  static const std::vector<Coefficients> f{Coefficients::prime_field(2),
                                           Coefficients::prime_field(3),
                                           Coefficients::prime_field(5), Coefficients::rationals()};
  return f;
}

const std::vector<Coefficients>& all_systems() {
  static const std::vector<Coefficients> s = [] {
    std::vector<Coefficients> out{Coefficients::integers()};
    out.insert(out.end(), fields().begin(), fields().end());
    return out;
  }();
  return s;
}

bool free_counts_match_homology(const FilteredComplex& c, const Coefficients& coeff,
                                std::ostream& detail) {
  std::vector<PointId> free;
  if (coeff.is_field()) {
    free = reduce(c, coeff).free;
  } else {
    const auto outcome = reduce_integer(c);
    if (!outcome.certified()) return true;  // nothing to compare
    free = outcome.form().free;
  }
  const int top = std::max(c.ambient_dim(), c.max_degree());
  for (int k = 0; k <= top; ++k) {
    const auto count = static_cast<std::size_t>(std::count_if(
        free.begin(), free.end(), [&](PointId p) { return c.point(p).degree == k; }));
    const auto h = oracle::homology(c, coeff, k);
    if (count != h.rank) {
      detail << coeff.display_name() << " degree " << k << ": " << count
             << " free points, homology rank " << h.rank;
      return false;
    }
  }
  return true;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<CheckResult> fixture_checks() {
  std::vector<CheckResult> out;
  Recorder check(out);
  const auto laud = fixture("laudenbach");
  const auto f0 = fixture("f0");
  const auto v = fixture("capitanio_v");
  const auto vp = fixture("capitanio_vprime");

  check("laudenbach: valid, 5 points, global index 2", [&](std::ostream& d) {
    const auto r = validate(laud);
    d << "points " << laud.size() << ", admissible " << r.selector_admissible;
    return r.ok && r.selector_admissible && laud.size() == 5 && r.global_index == 2;
  });

  struct Expect {
    const char* token;
    int minmax;
    const char* minmax_at;
    int maxmin;
    const char* maxmin_at;
  };
  const Expect table[] = {{"z", 3, "xi3_n", 2, "xi2_n"},
                          {"f2", 3, "xi3_n", 3, "xi3_n"},
                          {"f3", 2, "xi2_n", 2, "xi2_n"},
                          {"f5", 2, "xi2_n", 2, "xi2_n"},
                          {"q", 2, "xi2_n", 2, "xi2_n"}};
  for (const auto& e : table) {
    const auto coeff = Coefficients::parse(e.token);
    check("laudenbach: " + coeff.display_name() + " minmax " + std::to_string(e.minmax) + " at " +
              e.minmax_at + ", maxmin " + std::to_string(e.maxmin) + " at " + e.maxmin_at,
          [&](std::ostream& d) {
            const auto hi = minmax(laud, coeff);
            const auto lo = maxmin(laud, coeff);
            d << "minmax " << show(laud, hi) << ", maxmin " << show(laud, lo);
            return hi.value == e.minmax && laud.point(hi.point).name == e.minmax_at &&
                   lo.value == e.maxmin && laud.point(lo.point).name == e.maxmin_at;
          });
  }

  check("laudenbach: integer reduction obstructed at xi1_np1, pivot magnitude 2",
        [&](std::ostream& d) {
          const auto r = reduce_integer(laud);
          if (r.certified()) {
            d << "unexpectedly certified";
            return false;
          }
          d << "column " << laud.point(r.obstruction().column).name << ", pivot "
            << r.obstruction().pivot;
          return laud.point(r.obstruction().column).name == "xi1_np1" &&
                 abs(r.obstruction().pivot) == 2;
        });

  check("laudenbach: free point xi2_n over Q, xi3_n over F2", [&](std::ostream& d) {
    const auto q = reduce(laud, Coefficients::rationals()).free;
    const auto f2 = reduce(laud, Coefficients::prime_field(2)).free;
    d << "Q " << names(laud, q) << ", F2 " << names(laud, f2);
    return q == std::vector<PointId>{laud.id_of("xi2_n")} &&
           f2 == std::vector<PointId>{laud.id_of("xi3_n")};
  });

  check("capitanio_vprime: incidence criterion holds at xi2_n yet xi2_n is coupled",
        [&](std::ostream& d) {
          const bool crit = capitanio_criterion(vp, "xi2_n");
          const auto free = reduce(vp, Coefficients::rationals()).free;
          d << "criterion " << crit << ", Q free " << names(vp, free);
          return crit && free == std::vector<PointId>{vp.id_of("xi3_n")};
        });

  check("capitanio_v: Q free set {xi3_n}", [&](std::ostream& d) {
    const auto free = reduce(v, Coefficients::rationals()).free;
    d << "Q free " << names(v, free);
    return free == std::vector<PointId>{v.id_of("xi3_n")};
  });

  check("f0: integer reduction certified, free point xi2_n, minmax = maxmin = 2",
        [&](std::ostream& d) {
          const auto r = reduce_integer(f0);
          if (!r.certified()) {
            d << "obstructed at " << f0.point(r.obstruction().column).name;
            return false;
          }
          const auto hi = minmax_int(f0);
          const auto lo = maxmin_int(f0);
          d << "free " << names(f0, r.form().free) << ", minmax " << show(f0, hi) << ", maxmin "
            << show(f0, lo);
          return r.form().free == std::vector<PointId>{f0.id_of("xi2_n")} && hi.value == 2 &&
                 lo.value == 2;
        });

  check("single:2:7:4: global index 2, minmax 7", [&](std::ostream& d) {
    const auto s = fixture("single:2:7:4");
    const auto hi = minmax(s, Coefficients::integers());
    d << "index " << global_index(s) << ", minmax " << to_string(hi.value);
    return global_index(s) == 2 && hi.value == 7;
  });

  for (const auto* name : {"laudenbach", "f0"}) {
    const auto c = fixture(name);
    check(std::string(name) + ": maxmin = -minmax of the negated complex, every system",
          [&](std::ostream& d) {
            const auto neg = negate(c);
            for (const auto& coeff : all_systems()) {
              const auto lo = maxmin(c, coeff).value;
              const auto dual = minmax(neg, coeff).value;
              if (lo != -dual) {
                d << coeff.display_name() << ": " << to_string(lo) << " vs " << to_string(dual);
                return false;
              }
            }
            return negate(neg) == c;
          });
  }

  for (const auto& name : fixture_names()) {
    const auto c = fixture(name);
    check(name + ": free-point counts equal homology ranks", [&](std::ostream& d) {
      for (const auto& coeff : all_systems())
        if (!free_counts_match_homology(c, coeff, d)) return false;
      return true;
    });
  }
  return out;
}

const std::vector<std::string>& trial_check_names() {
  static const std::vector<std::string> n{
      "valid",         "designed-pairing", "field-selectors", "scan-agreement",
      "chain",         "int-forces-fields", "rank-pairing",    "betti",
      "normal-form",   "integer-certificate", "negation",      "duality",
      "stability",     "conjugation-invariance"};
  return n;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t index) {
  return splitmix64(base_seed * 0x100000001b3ULL + index);
}

TrialResult run_trial(std::uint64_t seed, std::size_t max_points) {
  TrialResult result;
  result.seed = seed;
  std::vector<CheckResult> all;
  Recorder check(all);

  std::optional<FilteredComplex> built;
  GeneratedComplex g;
  check("valid", [&](std::ostream& d) {
    const auto shape = random_shape(seed, max_points);
    g = random_complex(seed, shape);
    result.rearranged = (splitmix64(seed) & 1) != 0;
    built = result.rearranged ? rearrange_values(g.complex, seed) : g.complex;
    const auto r = validate(*built);
    if (!r.ok && !r.violations.empty()) d << r.violations.front().message;
    if (!r.selector_admissible && !r.admissibility.empty()) d << r.admissibility.front().message;
    return r.ok && r.selector_admissible;
  });
  if (!built || !all.back().passed) {
    for (auto& r : all)
      if (!r.passed) result.failures.push_back(std::move(r));
    return result;
  }
  const FilteredComplex& c = *built;
  result.points = c.size();

  if (!result.rearranged) {
    check("designed-pairing", [&](std::ostream& d) {
      const auto form = reduce(c, Coefficients::rationals());
      std::vector<Pair> designed;
      for (const auto& [u, l] : g.pairs) designed.push_back({c.id_of(u), c.id_of(l)});
      std::sort(designed.begin(), designed.end());
      d << "free " << names(c, form.free) << ", designed " << g.free_point;
      return form.free == std::vector<PointId>{c.id_of(g.free_point)} && form.pairs == designed;
    });
  }

  const auto hi_int = minmax_int(c);
  const auto lo_int = maxmin_int(c);
  for (const auto& f : fields()) {
    const std::string tag = " " + f.display_name();
    SelectorValue hi{}, lo{};
    check("field-selectors", [&](std::ostream& d) {
      hi = minmax_field(c, f);
      lo = maxmin_field(c, f);
      d << f.display_name() << ": minmax " << show(c, hi) << ", maxmin " << show(c, lo);
      return hi.value == lo.value;
    });
    check("scan-agreement", [&](std::ostream& d) {
      const auto scan = oracle::minmax_scan_field(c, f);
      d << f.display_name() << ": scan " << show(c, scan) << ", reduction " << show(c, hi);
      return scan == hi;
    });
    check("chain", [&](std::ostream& d) {
      d << f.display_name() << ": " << to_string(lo_int.value) << " <= " << to_string(lo.value)
        << " = " << to_string(hi.value) << " <= " << to_string(hi_int.value);
      return lo_int.value <= lo.value && lo.value == hi.value && hi.value <= hi_int.value;
    });
    check("int-forces-fields", [&](std::ostream& d) {
      d << f.display_name() << ": Z " << to_string(hi_int.value) << "/" << to_string(lo_int.value)
        << ", field " << to_string(hi.value);
      return hi_int.value != lo_int.value || (hi.value == hi_int.value && lo.value == hi_int.value);
    });
    check("rank-pairing", [&](std::ostream& d) {
      d << f.display_name();
      return oracle::pairs_by_rank(c, f) == reduce(c, f).pairs;
    });
    check("normal-form", [&](std::ostream& d) {
      d << f.display_name();
      return verify_normal_form(c, reduce(c, f));
    });
  }
  check("betti", [&](std::ostream& d) {
    for (const auto& coeff : all_systems())
      if (!free_counts_match_homology(c, coeff, d)) return false;
    return true;
  });
  check("integer-certificate", [&](std::ostream& d) {
    const auto r = reduce_integer(c);
    if (!r.certified()) return true;
    if (!verify_normal_form(c, r.form())) {
      d << "certified form fails verification";
      return false;
    }
    const auto free = r.form().free_of_degree(c, global_index(c));
    d << "free " << names(c, free) << ", minmax " << show(c, hi_int) << ", maxmin "
      << show(c, lo_int);
    return free.size() == 1 && hi_int.value == c.point(free[0]).value &&
           lo_int.value == c.point(free[0]).value;
  });

  const auto neg = negate(c);
  check("negation", [&](std::ostream&) { return negate(neg) == c; });
  check("duality", [&](std::ostream& d) {
    for (const auto& coeff : all_systems()) {
      const auto lo = maxmin(c, coeff).value;
      const auto dual = minmax(neg, coeff).value;
      if (lo != -dual) {
        d << coeff.display_name() << ": maxmin " << to_string(lo) << ", minmax of negation "
          << to_string(dual);
        return false;
      }
    }
    return true;
  });

  check("stability", [&](std::ostream& d) {
    const auto gap = minimum_gap(c);
    const Rational eps = gap ? Rational(*gap / 4) : Rational(1);
    const auto moved = perturb_values(c, eps, splitmix64(seed ^ 0x5157ULL));
    for (const auto& coeff : all_systems()) {
      const Rational dh = abs(Rational(minmax(c, coeff).value - minmax(moved, coeff).value));
      const Rational dl = abs(Rational(maxmin(c, coeff).value - maxmin(moved, coeff).value));
      if (dh > eps || dl > eps) {
        d << coeff.display_name() << ": shifts " << to_string(dh) << ", " << to_string(dl)
          << " exceed " << to_string(eps);
        return false;
      }
    }
    return true;
  });

  check("conjugation-invariance", [&](std::ostream& d) {
    const auto moved = change_basis(c, random_unimodular_basis(c, splitmix64(seed ^ 0xc0ULL)));
    for (const auto& f : fields()) {
      const auto a = reduce(c, f);
      const auto b = reduce(moved, f);
      if (a.pairs != b.pairs || a.free != b.free) {
        d << f.display_name() << ": free " << names(c, a.free) << " vs " << names(c, b.free);
        return false;
      }
    }
    return true;
  });

  for (auto& r : all)
    if (!r.passed) result.failures.push_back(std::move(r));
  return result;
}

std::vector<TrialResult> run_trials(std::uint64_t base_seed, std::size_t trials,
                                    std::size_t max_points, unsigned jobs) {
  std::vector<TrialResult> results(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++)
      results[i] = run_trial(trial_seed(base_seed, i), max_points);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace morsekit::cli
