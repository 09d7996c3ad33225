#include "vilenkin/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "vilenkin/chaos_index.hpp"
#include "vilenkin/cyclo.hpp"
#include "vilenkin/errors.hpp"
#include "vilenkin/khinchin.hpp"
#include "vilenkin/pary_set.hpp"
#include "vilenkin/rng.hpp"
#include "vilenkin/stepfun.hpp"
#include "vilenkin/uniqueness.hpp"
#include "vilenkin/vc_system.hpp"

namespace vilenkin::cli {
namespace {

using json = nlohmann::ordered_json;
using Table = std::vector<std::vector<unsigned>>;

constexpr std::uint64_t kOverlapFamilies = 200;
constexpr std::uint64_t kIndependenceTrials = 20;
constexpr unsigned kNormIterations = 100;

Rational ratio(Index num, Index den) {
  return Rational(BigInt(static_cast<unsigned long>(num)), BigInt(static_cast<unsigned long>(den)));
}

unsigned monomial_exponent(const CycloValue& v) {
  for (unsigned j = 0; j < v.base(); ++j) {
    if (!v.coeff(j).is_zero()) return j;
  }
  throw Error("expected a root of unity");
}

// Exponent of VC_n on every rank-r cell, read off the product of Rademacher
// step functions rather than the closed-form digit formula.
Table vc_exponent_table(unsigned p, unsigned r) {
  const Index cells = cell_count(p, r);
  Table table(cells, std::vector<unsigned>(cells));
  for (Index n = 0; n < cells; ++n) {
    const StepFn f = vc_function(p, n).refine(r);
    for (Index m = 0; m < cells; ++m) table[n][m] = monomial_exponent(f.value(m));
  }
  return table;
}

CycloValue random_cyclo(unsigned p, StreamRng& rng, int spread) {
  std::vector<Rational> coeffs(p);
  for (auto& c : coeffs) c = Rational(rng.between(-spread, spread));
  return CycloValue(p, std::move(coeffs));
}

StepFn random_stepfn(unsigned p, unsigned rank, StreamRng& rng) {
  std::vector<CycloValue> values;
  const Index cells = cell_count(p, rank);
  values.reserve(cells);
  for (Index c = 0; c < cells; ++c) values.push_back(random_cyclo(p, rng, 3));
  return StepFn(p, rank, std::move(values));
}

void add_rademacher_digits(Report& report, unsigned p, unsigned r) {
  const Index cells = cell_count(p, r);
  const Rational width = ratio(1, cells);
  bool ok = true;
  for (unsigned k = 0; k < r && ok; ++k) {
    const StepFn rk = rademacher(p, k);
    for (Index c = 0; c < cells; ++c) {
      const Rational mid = (Rational(static_cast<std::int64_t>(c)) + Rational(1, 2)) * width;
      const unsigned digit = digits_of_point(mid, p, r).digits[k];
      if (!equal_values(rk.value_at(mid), CycloValue::root(p, digit))) {
        ok = false;
        break;
      }
    }
  }
  report.add("rademacher-digit-identity", "rademacher-definition").pass(ok).info("cells", cells);
}

void add_orthonormality(Report& report, unsigned p, unsigned r, const Table& e) {
  const Index cells = e.size();
  const Rational scale = ratio(1, cells);
  Index failures = 0;
  std::vector<Rational> hist(p);
  for (Index n = 0; n < cells; ++n) {
    for (Index m = 0; m < cells; ++m) {
      std::vector<Index> counts(p, 0);
      for (Index c = 0; c < cells; ++c) ++counts[(e[n][c] + p - e[m][c]) % p];
      for (unsigned j = 0; j < p; ++j) hist[j] = Rational(static_cast<std::int64_t>(counts[j]));
      const CycloValue value = CycloValue(p, hist) * scale;
      if (!equal_values(value, CycloValue::constant(p, Rational(n == m ? 1 : 0)))) ++failures;
    }
  }
  // Direct integrals of products for the low indices.
  const Index direct = cell_count(p, std::min(r, 2u));
  for (Index n = 0; n < direct; ++n) {
    for (Index m = 0; m < direct; ++m) {
      const CycloValue v = inner_product(vc_function(p, n), vc_function(p, m));
      if (!equal_values(v, CycloValue::constant(p, Rational(n == m ? 1 : 0)))) ++failures;
    }
  }
  report.add("vc-orthonormality", "vc-orthonormal-basis")
      .pass(failures == 0)
      .info("pairs", cells * cells + direct * direct)
      .info("failures", failures);
}

void add_inverse_identity(Report& report, unsigned p, unsigned r) {
  bool ok = true;
  for (unsigned k = 1; k <= r; ++k) ok = ok && verify_inverse_identity(p, k);
  report.add("vc-inverse-identity", "vc-matrix-inverse").pass(ok).info("max_rank", r);
}

void add_operator_norm(Report& report, unsigned p, unsigned r, double tolerance) {
  double worst = 0.0;
  for (unsigned k = 1; k <= r; ++k) {
    const double expected = std::sqrt(static_cast<double>(cell_count(p, k)));
    worst = std::max(worst, std::abs(matrix_op_norm(p, k, kNormIterations) - expected));
  }
  report.add("vc-operator-norm", "vc-matrix-norm")
      .pass(worst <= tolerance)
      .approx("max_abs_deviation", worst, 0.0)
      .info("tolerance", tolerance);
}

void add_fast_transform(Report& report, unsigned p, unsigned r, std::uint64_t seed, double tolerance) {
  bool exact_ok = true;
  double float_dev = 0.0;
  for (unsigned k = 1; k <= r; ++k) {
    StreamRng rng(seed, 1000 + k);
    const Index cells = cell_count(p, k);
    const VCMatrix matrix(p, k);
    std::vector<CycloValue> values;
    std::vector<std::complex<double>> fvalues;
    for (Index m = 0; m < cells; ++m) {
      values.push_back(random_cyclo(p, rng, 3));
      fvalues.emplace_back(static_cast<double>(rng.between(-8, 8)) / 8, static_cast<double>(rng.between(-8, 8)) / 8);
    }
    const auto coeffs = fast_vc_transform(values, Direction::kForward);
    const auto back = fast_vc_transform(coeffs, Direction::kInverse);
    const auto fcoeffs = fast_vc_transform(fvalues, p, Direction::kForward);
    const Rational scale = ratio(1, cells);
    for (Index n = 0; n < cells; ++n) {
      CycloValue expect(p);
      std::complex<double> fexpect = 0.0;
      for (Index m = 0; m < cells; ++m) {
        const unsigned e = matrix.exponent(n, m);
        expect += values[m].rotated(-static_cast<long long>(e));
        fexpect += fvalues[m] * std::polar(1.0, -2.0 * M_PI * e / p);
      }
      if (!equal_values(expect * scale, coeffs[n]) || !equal_values(back[n], values[n])) exact_ok = false;
      float_dev = std::max(float_dev, std::abs(fexpect / static_cast<double>(cells) - fcoeffs[n]));
    }
  }
  report.add("fast-transform-matrix", "vc-matrix-factorization")
      .pass(exact_ok && float_dev <= tolerance)
      .info("exact_match", exact_ok)
      .approx("float_max_abs_deviation", float_dev, 0.0);
}

void add_parseval(Report& report, unsigned p, unsigned r, std::uint64_t seed) {
  StreamRng rng(seed, 2000);
  const StepFn f = random_stepfn(p, r, rng);
  const ExactCoeffs c = analyze(f);
  CycloValue sum(p);
  for (const auto& [n, v] : c.coeffs) sum.add_product(v, v.conj());
  const CycloValue energy = integral(f * f.conj());
  auto& rec = report.add("parseval", "vc-parseval").pass(equal_values(sum, energy));
  if (const auto q = energy.as_rational()) rec.exact("l2_norm_squared", *q);
}

void add_multiplicativity(Report& report, unsigned p, unsigned r, const Table& e) {
  const Index cells = e.size();
  Index failures = 0;
  for (Index a = 0; a < cells; ++a) {
    for (Index b = 0; b < cells; ++b) {
      const auto& sum = e[digitwise_add(a, b, p)];
      for (Index c = 0; c < cells; ++c) {
        if ((e[a][c] + e[b][c]) % p != sum[c]) {
          ++failures;
          break;
        }
      }
    }
  }
  const Index direct = cell_count(p, std::min(r, 2u));
  for (Index a = 0; a < direct; ++a) {
    for (Index b = 0; b < direct; ++b) {
      if (!equal_functions(vc_function(p, a) * vc_function(p, b), vc_function(p, digitwise_add(a, b, p)))) ++failures;
    }
  }
  report.add("vc-multiplicativity", "vc-digitwise-product").pass(failures == 0).info("failures", failures);
}

std::vector<PArySet> random_family(unsigned p, unsigned rank, StreamRng& rng) {
  const Index cells = cell_count(p, rank);
  // A per-family density keeps the bound from being vacuous too often.
  const std::uint64_t density = 1 + rng.below(cells);
  std::vector<PArySet> family;
  for (unsigned i = 0; i < p; ++i) {
    std::vector<std::uint8_t> mask(cells);
    for (auto& bit : mask) bit = rng.below(cells) < density;
    family.emplace_back(p, rank, std::move(mask));
  }
  return family;
}

void add_overlap_audit(Report& report, unsigned p, unsigned r, std::uint64_t seed) {
  Index failures = 0;
  Index nontrivial = 0;
  for (std::uint64_t t = 0; t < kOverlapFamilies; ++t) {
    StreamRng rng(seed, 3000 + t);
    const auto family = random_family(p, r, rng);
    const Lemma1Check check = lemma1_bound_check(family);
    failures += !check.holds;
    nontrivial += check.bound.sign() > 0;
  }
  report.add("overlap-bound-audit", "overlap-measure-bound")
      .pass(failures == 0)
      .info("families", kOverlapFamilies)
      .info("nontrivial_bounds", nontrivial)
      .info("failures", failures);
}

void add_independence(Report& report, unsigned p, unsigned r, std::uint64_t seed) {
  // Values are drawn from a small pool so that tables repeat values.
  std::vector<CycloValue> pool = {CycloValue(p), CycloValue::constant(p, Rational(1)), CycloValue::root(p, 1),
                                  CycloValue::constant(p, Rational(-2))};
  bool ok = true;
  for (std::uint64_t t = 0; t < kIndependenceTrials && ok; ++t) {
    StreamRng rng(seed, 4000 + t);
    std::vector<std::vector<CycloValue>> tables(r);
    for (auto& table : tables) {
      for (unsigned j = 0; j < p; ++j) table.push_back(pool[rng.below(pool.size())]);
    }
    ok = independence_check(p, tables);
  }
  report.add("digit-independence", "digit-function-independence")
      .pass(ok)
      .info("depth", r - 1)
      .info("trials", kIndependenceTrials);
}

void add_decomposition(Report& report, unsigned p, unsigned r) {
  bool ok = true;
  bool parity_rule = true;
  json re_symmetric = json::array();
  for (unsigned k = 0; k < r; ++k) {
    for (unsigned j = 1; j < p; ++j) {
      const StepFn rj = rademacher(p, k).pow(j);
      const auto pieces = symmetric_decomposition(p, k, j);
      StepFn sum = StepFn::constant(p, Rational(0));
      for (const auto& piece : pieces) {
        sum = sum + piece;
        ok = ok && distribution(piece).is_symmetric();
      }
      const StepFn re = real_part(rj);
      ok = ok && equal_functions(sum, re);
      ok = ok && distribution(imaginary_part_times_i(rj)).is_symmetric();
      const bool symmetric = distribution(re).is_symmetric();
      ok = ok && symmetric == ((p / std::gcd(j, p)) % 2 == 0);
      parity_rule = parity_rule && symmetric == (p % 2 == 0);
      if (k == 0) re_symmetric.push_back(symmetric);
    }
  }
  report.add("symmetric-decomposition", "real-part-decomposition")
      .pass(ok)
      .info("re_symmetric_by_power", re_symmetric)
      .info("re_symmetric_iff_p_even", parity_rule);
}

void add_index_counts(Report& report, unsigned p, unsigned r) {
  Index failures = 0;
  Index checked = 0;
  for (unsigned d = 1; d <= 4; ++d) {
    for (unsigned L = 1; L <= r; ++L) {
      const Index max_n = cell_count(p, L) - 1;
      for (const auto& spec : {IndexSpec::v(p, d), IndexSpec::vtilde(p, d), IndexSpec::wtilde(p, d)}) {
        ++checked;
        if (enumerate(spec, max_n).size() != count(spec, L)) ++failures;
      }
    }
  }
  report.add("index-counts", "chaos-index-counts")
      .pass(failures == 0)
      .info("checked", checked)
      .info("failures", failures);
}

void add_aset(Report& report, unsigned p, unsigned r) {
  bool ok = true;
  const unsigned top = std::min(r, 3u);
  for (unsigned L = 0; L <= top; ++L) {
    const Index max_n = cell_count(p, L + 1) - 1;
    for (unsigned s = 1; s <= L + 1; ++s) ok = ok && aset_multiplicity_check(p, s, L, max_n);
  }
  report.add("aset-multiplicity", "wtilde-cover-multiplicity").pass(ok).info("max_L", top);
}

IndexSpec spec_of(const RunConfig& c) {
  if (c.set == "v") return IndexSpec::v(c.p, c.d);
  if (c.set == "vtilde") return IndexSpec::vtilde(c.p, c.d);
  if (c.set == "wtilde") return IndexSpec::wtilde(c.p, c.s);
  if (c.set == "aset") return IndexSpec::aset(c.p, c.s, c.digits);
  throw DomainError("unknown index set '" + c.set + "'");
}

void add_sharpness(Report& report, const SharpnessReport& s, const std::string& name, const std::string& anchor) {
  const StepFn p_minus_one = synthesize(s.witness) - CycloValue::constant(s.p, Rational(1));
  auto& rec = report.add(name, anchor).pass(s.passed());
  rec.exact("level_set_measure", s.level_set_measure)
      .exact("threshold", s.threshold)
      .exact("expected_measure", Rational(1) - s.threshold);
  if (const auto v = s.level_value.as_rational()) rec.exact("level_value", *v);
  rec.exact("literal_zero_set_measure", zero_set(p_minus_one).measure())
      .info("witness_terms", s.witness.coeffs.size())
      .info("support_ok", s.support_ok)
      .info("constant_term_ok", s.constant_term_ok)
      .info("coefficients_ok", s.coefficients_ok)
      .info("identity_ok", s.identity_ok);
}

// ---- transform I/O ----

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw DomainError("malformed number '" + s + "'");
  return v;
}

Rational parse_rational(const json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_number()) return Rational::from_double(v.get<double>());
  throw DomainError("malformed rational in input");
}

double json_double(const json& v) {
  if (!v.is_number()) throw DomainError("malformed number in input");
  return v.get<double>();
}

struct Parsed {
  bool as_json = false;
  std::vector<CycloValue> exact;
  std::vector<std::complex<double>> floats;
};

Parsed parse_input(std::istream& in, unsigned p, bool exact) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  Parsed out;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '[') {
    out.as_json = true;
    json arr;
    try {
      arr = json::parse(body);
    } catch (const json::exception& e) {
      throw DomainError(std::string("malformed JSON input: ") + e.what());
    }
    if (!arr.is_array()) throw DomainError("JSON input must be an array");
    for (const auto& v : arr) {
      if (exact) {
        if (v.is_array()) {
          if (v.size() != p) throw DomainError("exact entries need 1 or p coefficients");
          std::vector<Rational> coeffs;
          for (const auto& c : v) coeffs.push_back(parse_rational(c));
          out.exact.emplace_back(p, std::move(coeffs));
        } else {
          out.exact.push_back(CycloValue::constant(p, parse_rational(v)));
        }
      } else if (v.is_array()) {
        if (v.size() != 2) throw DomainError("float entries are numbers or [re, im] pairs");
        out.floats.emplace_back(json_double(v[0]), json_double(v[1]));
      } else {
        out.floats.emplace_back(json_double(v), 0.0);
      }
    }
    return out;
  }
  std::istringstream lines(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(lines, line);) {
    ++line_no;
    const auto t = tokens(line);
    if (t.empty()) continue;
    try {
      if (exact) {
        if (t.size() == 1) {
          out.exact.push_back(CycloValue::constant(p, Rational::parse(t[0])));
        } else if (t.size() == p) {
          std::vector<Rational> coeffs;
          for (const auto& s : t) coeffs.push_back(Rational::parse(s));
          out.exact.emplace_back(p, std::move(coeffs));
        } else {
          throw DomainError("expected 1 or " + std::to_string(p) + " tokens");
        }
      } else {
        if (t.size() > 2) throw DomainError("expected 're' or 're im'");
        out.floats.emplace_back(parse_double(t[0]), t.size() == 2 ? parse_double(t[1]) : 0.0);
      }
    } catch (const DomainError& e) {
      throw DomainError("input line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<std::string> exact_tokens(const CycloValue& v) {
  if (const auto q = v.as_rational()) return {q->to_string()};
  auto key = v.canonical();
  key.resize(v.base());
  std::vector<std::string> out;
  for (const auto& c : key) out.push_back(c.to_string());
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

unsigned infer_rank(std::size_t length, unsigned p, unsigned k) {
  if (length == 0) throw DomainError("empty transform input");
  unsigned rank = 0;
  Index size = 1;
  while (size < length) {
    size = checked_pow(p, ++rank);
  }
  if (size != length) throw DomainError("input length " + std::to_string(length) + " is not a power of " + std::to_string(p));
  if (k != 0 && k != rank) {
    throw DomainError("input length " + std::to_string(length) + " does not match p^k = " + std::to_string(p) + "^" +
                      std::to_string(k));
  }
  cell_count(p, rank);
  return rank;
}

Index parse_env_limit(const char* text) {
  const std::string s = text;
  Index v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
    throw DomainError(std::string(kCellLimitEnv) + " must be a positive integer, got '" + s + "'");
  }
  return v;
}

class CellLimitScope {
 public:
  explicit CellLimitScope(Index limit) : saved_(cell_limit()) { set_cell_limit(limit); }
  ~CellLimitScope() { set_cell_limit(saved_); }
  CellLimitScope(const CellLimitScope&) = delete;
  CellLimitScope& operator=(const CellLimitScope&) = delete;

 private:
  Index saved_;
};

}  // namespace

void RunConfig::validate() const {
  check_base(p);
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
  if (mode != "exact" && mode != "float") throw DomainError("mode must be exact or float");
  if (format != "json" && format != "csv") throw DomainError("format must be json or csv");
  if (optimizer != "ascent" && optimizer != "random") throw DomainError("optimizer must be ascent or random");
  if (direction != "forward" && direction != "inverse") throw DomainError("direction must be forward or inverse");
  if (d < 1) throw DomainError("d must be at least 1");
  if (max_cells == 0) throw DomainError("max cells must be positive");
}

nlohmann::ordered_json RunConfig::to_json() const {
  json j;
  j["command"] = command;
  j["p"] = p;
  if (command == "verify") {
    j["max_rank"] = max_rank;
    j["seed"] = seed;
    j["tolerance"] = tolerance;
  } else if (command == "sharpness") {
    j["d"] = d;
  } else if (command == "khinchin") {
    j["set"] = set;
    j["d"] = d;
    j["s"] = s;
    j["q"] = q;
    j["N"] = N;
    j["trials"] = trials;
    j["seed"] = seed;
    j["optimizer"] = optimizer;
  }
  j["mode"] = mode;
  j["max_cells"] = max_cells;
  j["format"] = format;
  return j;
}

Report run_verify(const RunConfig& config) {
  config.validate();
  const unsigned p = config.p;
  const unsigned r = config.max_rank;
  if (r < 1) throw DomainError("max rank must be at least 1");
  const Index cells = cell_count(p, r);
  if (cells > kVerifyMaxCells) {
    throw RankOverflow("verify needs p^max_rank <= " + std::to_string(kVerifyMaxCells) + ", got " +
                       std::to_string(cells));
  }
  Report report("verify", config.to_json());
  const Table exponents = vc_exponent_table(p, r);
  add_rademacher_digits(report, p, r);
  add_orthonormality(report, p, r, exponents);
  add_inverse_identity(report, p, r);
  add_operator_norm(report, p, r, config.tolerance);
  add_fast_transform(report, p, r, config.seed, config.tolerance);
  add_parseval(report, p, r, config.seed);
  add_multiplicativity(report, p, r, exponents);
  add_overlap_audit(report, p, r, config.seed);
  add_independence(report, p, r, config.seed);
  add_decomposition(report, p, r);
  add_index_counts(report, p, r);
  add_aset(report, p, r);
  return report;
}

Report run_sharpness(const RunConfig& config) {
  config.validate();
  Report report("sharpness", config.to_json());
  add_sharpness(report, witness_v(config.p, config.d), "sharpness-v", "v-chaos-uniqueness-threshold");
  add_sharpness(report, witness_vtilde(config.p, config.d), "sharpness-vtilde", "vtilde-chaos-uniqueness-threshold");
  return report;
}

Report run_khinchin(const RunConfig& config) {
  config.validate();
  const IndexSpec spec = spec_of(config);
  spec.validate();
  const Optimizer optimizer = config.optimizer == "ascent" ? Optimizer::kAscent : Optimizer::kRandom;
  Report report("khinchin", config.to_json());

  const KhinchinReport k = estimate_constant(spec, config.q, config.N, config.trials, config.seed, optimizer);
  auto& rec = report.add("khinchin-constant", "chaos-q-lacunarity").pass(std::isfinite(k.best_ratio));
  rec.approx("best_ratio", k.best_ratio, k.best_ratio_err);
  if (k.best_exact_power) rec.exact("best_ratio_power", *k.best_exact_power);
  rec.info("index_set", spec.describe())
      .info("dimension", k.dimension)
      .info("method", k.method)
      .info("ascent_runs", k.ascent_runs);

  const double l1 = estimate_l1_constant(spec, config.N, config.trials, config.seed);
  // For p = 2 the sets V and Vtilde coincide.
  const bool classical =
      config.p == 2 && spec.order == 1 && (spec.kind == IndexKind::kV || spec.kind == IndexKind::kVTilde);
  const double l1_floor = 1.0 / std::sqrt(3.0) - 1e-6;
  report.add("l1-lower-constant", "l1-l2-equivalence")
      .pass(!classical || l1 >= l1_floor)
      .approx("min_ratio", l1, 1e-12 * static_cast<double>(k.dimension))
      .info("floor_checked", classical);

  if (classical && config.q == 4.0) {
    const auto members = enumerate(spec, config.N);
    const Rational ceiling(3);
    bool all_below = true;
    Rational worst(0);
    for (std::uint64_t t = 0; t < config.trials; ++t) {
      const GaussCoeffs c = to_exact(random_unit_coefficients(2, members, config.seed, t));
      const Rational norm2 = l2_norm_squared(c);
      const Rational power = fourth_moment_exact(c) / (norm2 * norm2);
      worst = std::max(worst, power);
      all_below = all_below && power <= ceiling;
    }
    if (k.best_exact_power) {
      worst = std::max(worst, *k.best_exact_power);
      all_below = all_below && *k.best_exact_power <= ceiling;
    }
    const auto n = static_cast<std::int64_t>(members.size());
    report.add("rademacher-fourth-moment-ceiling", "rademacher-fourth-moment")
        .pass(all_below)
        .exact("max_ratio_power", worst)
        .exact("ceiling", ceiling);
    const Rational target(29, 10);
    const Rational best = k.best_exact_power.value_or(Rational(0));
    report.add("rademacher-fourth-moment-target", "rademacher-fourth-moment")
        .pass(best >= target)
        .exact("best_ratio_power", best)
        .exact("target", target)
        .exact("supremum_on_support", Rational(3) - Rational(2, n));
  }
  return report;
}

void run_index(const RunConfig& config, std::ostream& out) {
  config.validate();
  const IndexSpec spec = spec_of(config);
  spec.validate();
  if (config.max > kEnumerationCap) throw RankOverflow("index --max exceeds " + std::to_string(kEnumerationCap));
  for_each_member(spec, config.max, [&](Index n) {
    out << n << '\n';
    return static_cast<bool>(out);
  });
}

void run_transform(const RunConfig& config, std::istream& in, std::ostream& out) {
  config.validate();
  const unsigned p = config.p;
  const bool exact = config.mode == "exact";
  const Direction dir = config.direction == "forward" ? Direction::kForward : Direction::kInverse;
  const Parsed input = parse_input(in, p, exact);

  if (exact) {
    infer_rank(input.exact.size(), p, config.k);
    const auto result = fast_vc_transform(input.exact, dir);
    if (input.as_json) {
      json arr = json::array();
      for (const auto& v : result) {
        const auto t = exact_tokens(v);
        arr.push_back(t.size() == 1 ? json(t[0]) : json(t));
      }
      out << arr.dump() << '\n';
    } else {
      for (const auto& v : result) {
        const auto t = exact_tokens(v);
        for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
        out << '\n';
      }
    }
    return;
  }

  infer_rank(input.floats.size(), p, config.k);
  const auto result = fast_vc_transform(input.floats, p, dir);
  if (input.as_json) {
    json arr = json::array();
    for (const auto& z : result) arr.push_back({z.real(), z.imag()});
    out << arr.dump() << '\n';
  } else {
    for (const auto& z : result) out << format_double(z.real()) << ' ' << format_double(z.imag()) << '\n';
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    if (const char* env = std::getenv(kCellLimitEnv)) config.max_cells = parse_env_limit(env);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  CLI::App app{"Vilenkin-Chrestenson systems: exact checks, lacunarity estimates, transforms", "vilenkin"};
  app.require_subcommand(1);
  bool no_timing = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", config.p, "Base p >= 2");
    sub->add_option("--output,-o", config.output, "Output file (default stdout)");
    sub->add_option("--format", config.format, "Report format: json or csv");
    sub->add_option("--mode", config.mode, "exact or float");
    sub->add_option("--tolerance", config.tolerance, "Float comparison tolerance");
    sub->add_option("--seed", config.seed, "Seed for every random draw");
    sub->add_option("--max-cells", config.max_cells, std::string("Cell cap p^rank (default from ") + kCellLimitEnv + ")");
    sub->add_flag("--no-timing", no_timing, "Omit the wall-time field");
  };

  auto* verify = app.add_subcommand("verify", "Run the exact verification suite");
  common(verify);
  verify->add_option("--max-rank", config.max_rank, "Largest rank k checked");

  auto* sharp = app.add_subcommand("sharpness", "Certify the uniqueness thresholds");
  common(sharp);
  sharp->add_option("--d", config.d, "Chaos order");

  auto* khin = app.add_subcommand("khinchin", "Estimate q-lacunarity constants");
  common(khin);
  khin->add_option("--d", config.d, "Chaos order");
  khin->add_option("--s", config.s, "Digit count for wtilde");
  khin->add_option("--q", config.q, "Exponent q > 2");
  khin->add_option("--N", config.N, "Largest index");
  khin->add_option("--trials", config.trials, "Random samples");
  khin->add_option("--set", config.set, "v, vtilde or wtilde");
  khin->add_option("--optimizer", config.optimizer, "ascent or random");

  auto* trans = app.add_subcommand("transform", "Fast VC transform of a value array");
  common(trans);
  trans->add_option("--k", config.k, "Rank (default: inferred from the input length)");
  trans->add_option("--direction", config.direction, "forward (values to coefficients) or inverse");
  trans->add_option("--input,-i", config.input, "Input file (default stdin)");

  auto* index = app.add_subcommand("index", "List members of a chaos index set");
  common(index);
  index->add_option("--set", config.set, "v, vtilde, wtilde or aset");
  index->add_option("--d", config.d, "Chaos order");
  index->add_option("--s", config.s, "Digit count for wtilde and aset");
  index->add_option("--digits", config.digits, "Digit values j_0 .. j_L for aset");
  index->add_option("--max", config.max, "Largest index listed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfigError;
  }
  config.command = app.get_subcommands().front()->get_name();
  config.timing = !no_timing;

  try {
    config.validate();
    const CellLimitScope scope(config.max_cells);

    std::ofstream file;
    if (!config.output.empty()) {
      file.open(config.output, std::ios::binary);
      if (!file) throw DomainError("cannot open output file '" + config.output + "'");
    }
    std::ostream& sink = config.output.empty() ? out : file;

    if (config.command == "index") {
      run_index(config, sink);
      return kExitPass;
    }
    if (config.command == "transform") {
      if (config.input.empty() || config.input == "-") {
        run_transform(config, std::cin, sink);
      } else {
        std::ifstream in(config.input, std::ios::binary);
        if (!in) throw DomainError("cannot open input file '" + config.input + "'");
        run_transform(config, in, sink);
      }
      return kExitPass;
    }

    const auto start = std::chrono::steady_clock::now();
    Report report = config.command == "verify"      ? run_verify(config)
                    : config.command == "sharpness" ? run_sharpness(config)
                                                    : run_khinchin(config);
    if (config.timing) {
      report.set_wall_time(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    if (config.format == "csv") {
      sink << report.to_csv();
    } else {
      sink << report.to_json().dump(2) << '\n';
    }
    return report.all_passed() ? kExitPass : kExitCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitConfigError;
  }
}

}  // namespace vilenkin::cli
