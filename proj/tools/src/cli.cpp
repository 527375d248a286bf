#include "morsekit/cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "morsekit/barannikov.hpp"
#include "morsekit/cli/checks.hpp"
#include "morsekit/error.hpp"
#include "morsekit/gen.hpp"
#include "morsekit/oracle.hpp"
#include "morsekit/selector.hpp"

namespace morsekit::cli {

namespace {

enum class Format { Text, Kv };

// key=value records; values with spaces, quotes or '=' are double-quoted.
class Record {
 public:
  explicit Record(std::string_view kind) { line_ << "record=" << kind; }

  Record& operator()(std::string_view key, const std::string& value) {
    line_ << ' ' << key << '=' << quote(value);
    return *this;
  }
  Record& operator()(std::string_view key, const char* value) { return (*this)(key, std::string(value)); }
  Record& operator()(std::string_view key, bool value) { return (*this)(key, value ? "true" : "false"); }
  Record& operator()(std::string_view key, std::size_t value) {
    return (*this)(key, std::to_string(value));
  }
  Record& operator()(std::string_view key, int value) { return (*this)(key, std::to_string(value)); }
  Record& operator()(std::string_view key, const Rational& value) {
    return (*this)(key, to_string(value));
  }

  friend std::ostream& operator<<(std::ostream& os, const Record& r) {
    return os << r.line_.str() << '\n';
  }

 private:
  static std::string quote(const std::string& s) {
    const bool plain = !s.empty() && s.find_first_of(" \t\"=\\") == std::string::npos;
    if (plain) return s;
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    return out + '"';
  }

  std::ostringstream line_;
};

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string at(const FilteredComplex& c, const SelectorValue& v) {
  return to_string(v.value) + " @ " + c.point(v.point).name;
}

std::string describe(const FilteredComplex& c, PointId p) {
  const auto& pt = c.point(p);
  return pt.name + " (degree " + std::to_string(pt.degree) + ", value " + to_string(pt.value) + ")";
}

FilteredComplex load(const std::string& path, std::istream& in) {
  if (path == "-") return parse_complex(in);
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::Syntax, "cannot open '" + path + "'");
  return parse_complex(file);
}

std::pair<Rational, Rational> parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    auto lo = parse_rational(std::string_view(text).substr(0, colon));
    auto hi = parse_rational(std::string_view(text).substr(colon + 1));
    if (lo && hi) return {*lo, *hi};
  }
  throw CLI::ValidationError("--window", "expected B:C with rational bounds, got '" + text + "'");
}

// ---------------------------------------------------------------------------

int cmd_validate(const FilteredComplex& c, Format fmt, std::ostream& out) {
  const auto r = validate(c);
  if (fmt == Format::Kv) {
    Record rec("validate");
    rec("valid", r.ok)("points", c.size())("admissible", r.selector_admissible);
    if (r.global_index) rec("global_index", *r.global_index);
    out << rec;
    for (const auto& v : r.violations)
      out << Record("violation")("code", to_string(v.code))("message", v.message);
    for (const auto& a : r.admissibility)
      out << Record("admissibility")("code", to_string(a.code))("message", a.message);
  } else {
    out << "valid: " << yes_no(r.ok) << '\n' << "points: " << c.size() << '\n';
    for (const auto& v : r.violations) out << "violation " << to_string(v.code) << ": " << v.message << '\n';
    out << "selector-admissible: " << yes_no(r.selector_admissible) << '\n';
    if (r.global_index) out << "global-index: " << *r.global_index << '\n';
    for (const auto& a : r.admissibility)
      out << "admissibility " << to_string(a.code) << ": " << a.message << '\n';
  }
  return r.ok ? kOk : kInvalidInput;
}

void print_form(const FilteredComplex& c, const CanonicalForm& form, bool show_basis, Format fmt,
                std::ostream& out) {
  for (const Pair& p : form.pairs) {
    if (fmt == Format::Kv)
      out << Record("pair")("upper", c.point(p.upper).name)("lower", c.point(p.lower).name)(
          "upper_value", c.point(p.upper).value)("lower_value", c.point(p.lower).value);
    else
      out << "pair " << describe(c, p.upper) << " -> " << describe(c, p.lower) << '\n';
  }
  for (PointId f : form.free) {
    if (fmt == Format::Kv)
      out << Record("free")("point", c.point(f).name)("degree", c.point(f).degree)(
          "value", c.point(f).value);
    else
      out << "free " << describe(c, f) << '\n';
  }
  if (!show_basis) return;
  for (std::size_t k = 0; k < form.basis.size(); ++k) {
    const auto& p = form.basis[k];
    if (p.rows() == 0) continue;
    const auto ids = c.points_of_degree(static_cast<int>(k));
    for (std::size_t col = 0; col < p.cols(); ++col) {
      std::string entries;
      for (std::size_t r = 0; r < p.rows(); ++r) {
        if (p(r, col) == 0) continue;
        if (!entries.empty()) entries += ' ';
        entries += to_string(p(r, col)) + "*" + c.point(ids[r]).name;
      }
      if (fmt == Format::Kv)
        out << Record("basis")("degree", static_cast<int>(k))("point", c.point(ids[col]).name)(
            "vector", entries);
      else
        out << "basis " << c.point(ids[col]).name << " = " << entries << '\n';
    }
  }
}

int cmd_reduce(const FilteredComplex& c, const Coefficients& coeff, bool show_basis, Format fmt,
               std::ostream& out) {
  if (coeff.is_field()) {
    const auto form = reduce(c, coeff);
    if (fmt == Format::Kv)
      out << Record("reduce")("coeff", coeff.token())("certified", true);
    else
      out << "coefficients: " << coeff.display_name() << '\n';
    print_form(c, form, show_basis, fmt, out);
    return kOk;
  }
  const auto outcome = reduce_integer(c);
  if (fmt == Format::Kv) {
    out << Record("reduce")("coeff", coeff.token())("certified", outcome.certified());
  } else {
    out << "coefficients: " << coeff.display_name() << '\n'
        << "certified: " << yes_no(outcome.certified()) << '\n';
  }
  if (outcome.certified()) {
    print_form(c, outcome.form(), show_basis, fmt, out);
  } else {
    const auto& ob = outcome.obstruction();
    if (fmt == Format::Kv)
      out << Record("obstruction")("column", c.point(ob.column).name)("pivot", ob.pivot.get_str());
    else
      out << "obstruction: column " << c.point(ob.column).name << ", pivot " << ob.pivot << '\n';
  }
  return kOk;
}

int cmd_selector(const FilteredComplex& c, const std::vector<Coefficients>& coeffs, Format fmt,
                 std::ostream& out) {
  const auto report = selector_report(c, coeffs);
  if (fmt == Format::Kv) {
    for (const auto& e : report.entries)
      out << Record("selector")("coeff", e.coefficients.token())("minmax", e.minmax.value)(
          "minmax_point", c.point(e.minmax.point).name)("maxmin", e.maxmin.value)(
          "maxmin_point", c.point(e.maxmin.point).name)("equal", e.equal());
    out << Record("summary")("field_equal", report.field_equal)("int_equal", report.int_equal)(
        "chain_ok", report.chain_ok)("int_forces_fields", report.int_forces_fields);
  } else {
    const auto width = [&](auto get) {
      std::size_t w = 6;
      for (const auto& e : report.entries) w = std::max(w, get(e).size());
      return w + 2;
    };
    const auto w_hi = width([&](const SelectorEntry& e) { return at(c, e.minmax); });
    const auto w_lo = width([&](const SelectorEntry& e) { return at(c, e.maxmin); });
    out << std::left << std::setw(7) << "coeff" << std::setw(static_cast<int>(w_hi)) << "minmax"
        << std::setw(static_cast<int>(w_lo)) << "maxmin" << "equal\n";
    for (const auto& e : report.entries)
      out << std::setw(7) << e.coefficients.display_name()
          << std::setw(static_cast<int>(w_hi)) << at(c, e.minmax)
          << std::setw(static_cast<int>(w_lo)) << at(c, e.maxmin) << yes_no(e.equal()) << '\n';
    out << std::right << "field-equal: " << yes_no(report.field_equal) << '\n'
        << "int-equal: " << yes_no(report.int_equal) << '\n'
        << "chain: " << (report.chain_ok ? "ok" : "violated") << '\n'
        << "int-forces-fields: " << (report.int_forces_fields ? "ok" : "violated") << '\n';
  }
  return report.chain_ok && report.int_forces_fields ? kOk : kCheckFailed;
}

int cmd_oracle(const FilteredComplex& c, const Coefficients& coeff, Format fmt, std::ostream& out) {
  require_valid(c);
  if (fmt == Format::Text) out << "coefficients: " << coeff.display_name() << '\n';
  const int top = std::max(c.ambient_dim(), c.max_degree());
  std::vector<std::size_t> ranks;
  for (int k = 0; k <= top; ++k) {
    const auto h = oracle::homology(c, coeff, k);
    ranks.push_back(h.rank);
    std::string torsion;
    for (const auto& t : h.torsion) torsion += (torsion.empty() ? "" : ",") + t.get_str();
    if (fmt == Format::Kv) {
      Record rec("homology");
      rec("degree", k)("rank", h.rank);
      if (!torsion.empty()) rec("torsion", torsion);
      out << rec;
    } else {
      out << "homology " << k << ": rank " << h.rank;
      if (!torsion.empty()) out << ", torsion " << torsion;
      out << '\n';
    }
  }

  bool agree = true;
  std::vector<PointId> free;
  if (coeff.is_field()) {
    const auto pairs = oracle::pairs_by_rank(c, coeff);
    free = oracle::free_by_rank(c, coeff);
    for (const Pair& p : pairs) {
      if (fmt == Format::Kv)
        out << Record("pair")("upper", c.point(p.upper).name)("lower", c.point(p.lower).name);
      else
        out << "pair " << c.point(p.upper).name << " -> " << c.point(p.lower).name << '\n';
    }
    for (PointId f : free) {
      if (fmt == Format::Kv)
        out << Record("free")("point", c.point(f).name);
      else
        out << "free " << c.point(f).name << '\n';
    }
    agree = pairs == reduce(c, coeff).pairs;
    if (validate(c).selector_admissible) {
      const auto scan = oracle::minmax_scan_field(c, coeff);
      agree = agree && scan == minmax_field(c, coeff);
      if (fmt == Format::Kv)
        out << Record("scan")("minmax", scan.value)("point", c.point(scan.point).name);
      else
        out << "scan-minmax: " << at(c, scan) << '\n';
    }
  } else if (const auto outcome = reduce_integer(c); outcome.certified()) {
    free = outcome.form().free;
  } else {
    free.clear();
    agree = true;  // no integral normal form to compare against
    if (fmt == Format::Kv)
      out << Record("agreement")("ok", true)("compared", false);
    else
      out << "agreement: not compared (integral reduction obstructed)\n";
    return kOk;
  }
  for (int k = 0; k <= top; ++k) {
    const auto n = static_cast<std::size_t>(std::count_if(
        free.begin(), free.end(), [&](PointId p) { return c.point(p).degree == k; }));
    agree = agree && n == ranks[static_cast<std::size_t>(k)];
  }
  if (fmt == Format::Kv)
    out << Record("agreement")("ok", agree)("compared", true);
  else
    out << "agreement: " << yes_no(agree) << '\n';
  return agree ? kOk : kCheckFailed;
}

int cmd_verify(Format fmt, std::ostream& out) {
  const auto results = fixture_checks();
  std::size_t passed = 0;
  for (const auto& r : results) {
    passed += r.passed;
    if (fmt == Format::Kv) {
      out << Record("check")("name", r.name)("passed", r.passed)("detail", r.detail);
    } else {
      out << (r.passed ? "PASS  " : "FAIL  ") << r.name;
      if (!r.passed && !r.detail.empty()) out << ": " << r.detail;
      out << '\n';
    }
  }
  if (fmt == Format::Kv)
    out << Record("summary")("passed", passed)("total", results.size());
  else
    out << passed << '/' << results.size() << " checks passed\n";
  return passed == results.size() ? kOk : kCheckFailed;
}

int cmd_fuzz(std::size_t trials, std::uint64_t seed, std::size_t max_points, unsigned jobs,
             Format fmt, std::ostream& out) {
  const auto results = run_trials(seed, trials, max_points, jobs);
  std::map<std::string, std::size_t> counts;
  for (const auto& name : trial_check_names()) counts[name] = 0;
  std::size_t failed_trials = 0, points = 0, rearranged = 0;
  for (const auto& t : results) {
    failed_trials += !t.failures.empty();
    points += t.points;
    rearranged += t.rearranged;
    for (const auto& f : t.failures) ++counts[f.name];
  }
  if (fmt == Format::Kv) {
    out << Record("fuzz")("trials", trials)("seed", std::to_string(seed))("max_points", max_points)(
        "points", points)("rearranged", rearranged)("failed_trials", failed_trials);
    for (const auto& name : trial_check_names())
      out << Record("check")("name", name)("failures", counts[name]);
    for (std::size_t i = 0; i < results.size(); ++i)
      for (const auto& f : results[i].failures)
        out << Record("failure")("trial", i)("seed", std::to_string(results[i].seed))(
            "check", f.name)("detail", f.detail);
  } else {
    out << "trials: " << trials << '\n'
        << "seed: " << seed << '\n'
        << "max-points: " << max_points << '\n'
        << "points generated: " << points << " (" << rearranged << " rearranged complexes)\n";
    for (const auto& name : trial_check_names())
      out << "check " << std::left << std::setw(24) << name << std::right << counts[name]
          << " failures\n";
    for (std::size_t i = 0; i < results.size(); ++i)
      for (const auto& f : results[i].failures)
        out << "FAIL trial " << i << " (seed " << results[i].seed << ") " << f.name << ": "
            << f.detail << '\n';
    out << "failed trials: " << failed_trials << '\n';
  }
  return failed_trials == 0 ? kOk : kCheckFailed;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::UnsupportedCoefficients:
    case ErrorCode::NotPrime:
    case ErrorCode::UnknownFixture:
      return kUsage;
    case ErrorCode::InternalInconsistency:
      return kCheckFailed;
    default:
      return kInvalidInput;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Barannikov normal forms and minmax/maxmin selectors of filtered Morse complexes",
               "morsekit"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "morsekit 0.1.0");

  std::string file, coeff_text, coeff_list = "z,q,f2,f3,f5", window, fixture_name;
  std::string format = "text";
  bool show_basis = false;
  std::size_t trials = 100, max_points = 40;
  std::uint64_t seed = 1;
  unsigned jobs = 1;

  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "kv"}))
        ->capture_default_str();
  };
  const auto add_file = [&](CLI::App* sub) {
    sub->add_option("FILE", file, "Complex file, or - for standard input")->required();
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check a complex and report violations");
  add_file(validate_cmd);
  add_format(validate_cmd);

  auto* reduce_cmd = app.add_subcommand("reduce", "Compute the Barannikov normal form");
  add_file(reduce_cmd);
  reduce_cmd->add_option("--coeff", coeff_text, "Coefficients: z, q, f<p>")->required();
  reduce_cmd->add_flag("--show-basis", show_basis, "Print the triangular basis vectors");
  add_format(reduce_cmd);

  auto* selector_cmd = app.add_subcommand("selector", "Compute minmax and maxmin selectors");
  add_file(selector_cmd);
  selector_cmd->add_option("--coeff", coeff_list, "Comma-separated coefficient systems")
      ->capture_default_str();
  add_format(selector_cmd);

  auto* negate_cmd = app.add_subcommand("negate", "Print the complex of the negated function");
  add_file(negate_cmd);

  auto* restrict_cmd = app.add_subcommand("restrict", "Print the subquotient complex of a window");
  add_file(restrict_cmd);
  restrict_cmd->add_option("--window", window, "Window B:C with B < C, both regular")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Homology and rank-based pairing cross-check");
  add_file(oracle_cmd);
  oracle_cmd->add_option("--coeff", coeff_text, "Coefficients: z, q, f<p>")->required();
  add_format(oracle_cmd);

  auto* fixture_cmd = app.add_subcommand("fixture", "Print a bundled fixture complex");
  fixture_cmd->add_option("NAME", fixture_name, "laudenbach, f0, capitanio_v, capitanio_vprime or single:<degree>:<value>:<ambient>")
      ->required();

  auto* verify_cmd = app.add_subcommand("verify-paper", "Run the fixture assertion table");
  add_format(verify_cmd);

  auto* fuzz_cmd = app.add_subcommand("fuzz", "Seeded random complexes against the invariant battery");
  fuzz_cmd->add_option("--trials", trials, "Number of complexes")->capture_default_str();
  fuzz_cmd->add_option("--seed", seed, "Base seed")->capture_default_str();
  fuzz_cmd->add_option("--max-points", max_points, "Maximum points per complex")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fuzz_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  add_format(fuzz_cmd);

  std::vector<std::string> argv_store{"morsekit"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  const Format fmt = format == "kv" ? Format::Kv : Format::Text;

  try {
    if (fixture_cmd->parsed()) {
      out << serialize(fixture(fixture_name));
      return kOk;
    }
    if (verify_cmd->parsed()) return cmd_verify(fmt, out);
    if (fuzz_cmd->parsed()) return cmd_fuzz(trials, seed, max_points, jobs, fmt, out);

    // Coefficient and window arguments are usage errors, so check them before
    // reading input.
    std::vector<Coefficients> coeffs;
    std::optional<std::pair<Rational, Rational>> bounds;
    if (reduce_cmd->parsed() || oracle_cmd->parsed()) coeffs = {Coefficients::parse(coeff_text)};
    if (selector_cmd->parsed()) coeffs = parse_coefficient_list(coeff_list);
    if (restrict_cmd->parsed()) bounds = parse_window(window);

    const FilteredComplex c = load(file, in);
    if (validate_cmd->parsed()) return cmd_validate(c, fmt, out);
    if (reduce_cmd->parsed()) return cmd_reduce(c, coeffs.front(), show_basis, fmt, out);
    if (selector_cmd->parsed()) return cmd_selector(c, coeffs, fmt, out);
    if (oracle_cmd->parsed()) return cmd_oracle(c, coeffs.front(), fmt, out);
    if (negate_cmd->parsed()) {
      out << serialize(negate(c));
      return kOk;
    }
    if (restrict_cmd->parsed()) {
      out << serialize(restrict_window(c, bounds->first, bounds->second));
      return kOk;
    }
  } catch (const CLI::ValidationError& e) {
    err << "morsekit: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "morsekit: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kUsage;
}

}  // namespace morsekit::cli
