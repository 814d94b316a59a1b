#include "helpers.hpp"

#include "monogamy/monogamy.hpp"

#include <cmath>
#include <limits>

using namespace monogamy;

namespace {

MonogamyRecord rec(double e_abc, double e_ab, double e_ac, TripleMeasure m = TripleMeasure::Eof) {
  return MonogamyRecord::make(e_abc, e_ab, e_ac, m);
}

void check_triple(const MonogamyRecord& r, double abc, double ab, double ac, double tol) {
  CHECK(std::abs(r.e_abc - abc) < tol);
  CHECK(std::abs(r.e_ab - ab) < tol);
  CHECK(std::abs(r.e_ac - ac) < tol);
  CHECK(std::abs(r.residual - (abc - ab - ac)) < tol);
}

}  // namespace

TEST_CASE("measure ids") {
  CHECK(parse_triple_measure("tangle") == TripleMeasure::Tangle);
  CHECK(parse_triple_measure("eof") == TripleMeasure::Eof);
  CHECK(to_string(TripleMeasure::Eof) == "eof");
  CHECK_THROWS_AS(parse_triple_measure("ree"), AuditError);
}

TEST_CASE("ckw_residual: GHZ, W, product") {
  check_triple(ckw_residual(named_state(NamedState::Ghz)), 1.0, 0.0, 0.0, 1e-9);
  check_triple(ckw_residual(named_state(NamedState::W)), 8.0 / 9.0, 4.0 / 9.0, 4.0 / 9.0, 1e-9);
  const PureState product = PureState(tensor(named_state(NamedState::Product).amplitudes(),
                                             testing::ket({1.0, 0.0})),
                                      {2, 2, 2});
  check_triple(ckw_residual(product), 0.0, 0.0, 0.0, 1e-9);
  CHECK_THROWS_AS(ckw_residual(named_state(NamedState::Bell)), AuditError);
}

TEST_CASE("ckw_residual is nonnegative and inside the triangle") {
  const auto records = sample_records(TripleMeasure::Tangle, 20000, 1);
  for (const auto& r : records) {
    CHECK(r.residual >= -1e-9);
    CHECK(r.e_ab + r.e_ac <= r.e_abc + 1e-9);
  }
}

TEST_CASE("triple_eof: counterexample, GHZ, product") {
  const MonogamyRecord ce = triple_eof(named_state(NamedState::Counterexample));
  CHECK(std::abs(ce.e_abc - 1.0) < 1e-9);
  CHECK(std::abs(ce.e_ab - 0.6008760367) < 1e-9);
  CHECK(std::abs(ce.e_ab - ce.e_ac) < 1e-9);
  CHECK(std::abs(ce.residual + 0.2017520734) < 1e-9);
  CHECK(ce.e_ab + ce.e_ac > ce.e_abc);
  check_triple(triple_eof(named_state(NamedState::Ghz)), 1.0, 0.0, 0.0, 1e-9);
  const PureState product(Eigen::VectorXcd::Unit(8, 0), {2, 2, 2});
  check_triple(triple_eof(product), 0.0, 0.0, 0.0, 1e-9);
}

TEST_CASE("sampled EoF records contain additive violations") {
  const auto records = sample_records(TripleMeasure::Eof, 100, 1);
  CHECK(std::ranges::any_of(records, [](const MonogamyRecord& r) { return r.residual < 0.0; }));
}

TEST_CASE("sample_records: seeds and determinism") {
  const auto a = sample_records(TripleMeasure::Eof, 5, 70);
  const auto b = sample_records(TripleMeasure::Eof, 5, 70);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].state_seed == 70 + i);
    CHECK(a[i].e_abc == b[i].e_abc);
    CHECK(a[i].e_ab == b[i].e_ab);
  }
  // record i is exactly the record of seed + i on its own
  const MonogamyRecord single = triple_eof(haar_random_pure({2, 2, 2}, 73));
  CHECK(single.e_ac == a[3].e_ac);
}

TEST_CASE("ckw_mixed: pure input, GHZ/W mixture, maximally mixed") {
  const PureState psi = haar_random_pure({2, 2, 2}, 17);
  const MonogamyRecord pure = ckw_residual(psi);
  const MonogamyRecord mixed = ckw_mixed(to_density(psi));
  CHECK(std::abs(pure.e_abc - mixed.e_abc) < 1e-6);
  CHECK(std::abs(pure.residual - mixed.residual) < 1e-6);

  const DensityMatrix gw =
      mix(Ensemble{{0.5, 0.5}, {named_state(NamedState::Ghz), named_state(NamedState::W)}});
  CHECK(ckw_mixed(gw).residual >= kMixedResidualAlarm);

  const DensityMatrix flat(ComplexMatrix::Identity(8, 8) / 8.0, {2, 2, 2});
  RoofConfig quick;
  quick.restarts = 4;
  check_triple(ckw_mixed(flat, quick), 0.0, 0.0, 0.0, 1e-6);
}

TEST_CASE("ckw_mixed residual on random low-rank states") {
  RoofConfig cfg;
  cfg.restarts = 8;
  for (std::uint64_t s = 0; s < 5; ++s) {
    cfg.seed = s;
    CHECK(ckw_mixed(ginibre_random_density(Dims{2, 2, 2}, 2, s), cfg).residual >= kMixedResidualAlarm);
  }
}

TEST_CASE("monotonicity_audit") {
  CHECK(monotonicity_audit(sample_records(TripleMeasure::Eof, 10000, 1)).empty());
  CHECK(monotonicity_audit(sample_records(TripleMeasure::Tangle, 10000, 1)).empty());
  const auto flagged = monotonicity_audit({rec(0.5, 0.9, 0.1), rec(0.5, 0.5, 0.5), rec(0.5, 0.1, 0.5 + 2e-8)});
  CHECK(flagged.size() == 2);
}

TEST_CASE("power_mean") {
  CHECK(std::abs(power_mean(0.5, 0.5, 1.0) - 1.0) < 1e-15);
  CHECK(std::abs(power_mean(3.0, 4.0, 2.0) - 5.0) < 1e-14);
  CHECK(power_mean(0.0, 0.0, 2.0) == 0.0);
  CHECK(std::abs(power_mean(0.3, 0.7, 500.0) - 0.7) < 1e-9);
  // nonincreasing in alpha
  double prev = power_mean(0.4, 0.6, 0.01);
  for (double a = 0.02; a < 50.0; a *= 1.3) {
    const double v = power_mean(0.4, 0.6, a);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("record_alpha: analytic cases") {
  const RecordAlpha one = record_alpha(rec(1.0, 0.5, 0.5));
  CHECK(one.status == AlphaStatus::Finite);
  CHECK(std::abs(one.alpha - 1.0) < 1e-8);

  // 2 a^α = 1  =>  α = log 2 / (-log a)
  const double a = 0.6009;
  const RecordAlpha ce = record_alpha(rec(1.0, a, a));
  CHECK(std::abs(ce.alpha - std::log(2.0) / -std::log(a)) < 1e-8);
  CHECK(std::abs(ce.alpha - 1.361) < 1e-3);

  CHECK(record_alpha(rec(1.0, 0.0, 0.3)).status == AlphaStatus::Skipped);
  CHECK(record_alpha(rec(1.0, 1.0, 0.5)).status == AlphaStatus::Infinite);
  CHECK(std::isinf(record_alpha(rec(1.0, 1.0, 0.5)).alpha));
  // generic record: bisection lands on the boundary power_mean = e_abc
  const RecordAlpha generic = record_alpha(rec(1.0, 0.1, 0.2));
  CHECK(generic.status == AlphaStatus::Finite);
  CHECK(power_mean(0.1, 0.2, generic.alpha) <= 1.0);
  CHECK(power_mean(0.1, 0.2, generic.alpha - 1e-8) > 1.0);
  const RecordAlpha capped = record_alpha(rec(1.0, 0.999, 0.999), 2.0);
  CHECK(capped.status == AlphaStatus::Capped);
  CHECK(capped.alpha == 2.0);
}

TEST_CASE("alpha_fit on tangle records stays at or below one") {
  const auto records = sample_records(TripleMeasure::Tangle, 10000, 1);
  const AlphaFitReport report = alpha_fit(records);
  CHECK(!report.infinite);
  CHECK(report.alpha_min <= 1.0 + 1e-6);
  CHECK(report.sample_size == records.size());
  CHECK(report.per_record.size() == records.size());
  // At the fitted alpha every fitting record satisfies the power-mean bound.
  CHECK(count_alpha_violations(records, report.alpha_min) == 0);
}

TEST_CASE("alpha_fit on EoF records is finite and self-consistent") {
  const auto records = sample_records(TripleMeasure::Eof, 10000, 1);
  const AlphaFitReport report = alpha_fit(records);
  CHECK(!report.infinite);
  CHECK(report.capped == 0);
  CHECK(report.alpha_min > 1.0);
  CHECK(std::isfinite(report.alpha_min));
  CHECK(count_alpha_violations(records, report.alpha_min) == 0);
}

TEST_CASE("alpha_fit flags, revalidation, errors") {
  const AlphaFitReport inf = alpha_fit({rec(1.0, 0.5, 0.5), rec(1.0, 1.0, 0.2)});
  CHECK(inf.infinite);
  CHECK(inf.infinite_count == 1);

  AlphaFitReport fit = alpha_fit({rec(1.0, 0.5, 0.5)});
  revalidate(fit, {rec(1.0, 0.4, 0.4), rec(1.0, 0.6, 0.6)});
  CHECK(fit.validation_sample_size == 2);
  CHECK(fit.validation_violations == 1);

  CHECK_THROWS_AS(alpha_fit({}), AuditError);
  CHECK_THROWS_AS(alpha_fit({rec(1.0, 0.5, 0.5)}, 1e-4), AuditError);
}

TEST_CASE("equality_audit") {
  CHECK(equality_audit(sample_records(TripleMeasure::Tangle, 10000, 1), 1e-6, 1e-3).empty());
  CHECK(equality_audit(sample_records(TripleMeasure::Eof, 10000, 1), 1e-6, 1e-3).empty());
  CHECK(equality_audit({rec(1.0, 1.0, 0.5)}, 1e-6, 1e-3).size() == 1);
  CHECK(equality_audit({rec(1.0, 1.0, 0.0)}, 1e-6, 1e-3).empty());  // GHZ-like: min side is 0
}

TEST_CASE("finite alpha and a clean equality audit go together") {
  const auto records = sample_records(TripleMeasure::Eof, 2000, 5);
  CHECK(!alpha_fit(records).infinite);
  CHECK(equality_audit(records, 1e-6, 1e-3).empty());
  // synthetic records with the infinity flag are also equality candidates
  for (const MonogamyRecord& r : {rec(1.0, 1.0, 0.5), rec(0.8, 0.3, 0.8), rec(0.5, 0.5 - 5e-10, 0.01)}) {
    CHECK(record_alpha(r).status == AlphaStatus::Infinite);
    CHECK(equality_audit({r}, 1e-6, 1e-3).size() == 1);
  }
}

TEST_CASE("eof_bound: counterexample, axis, c = 0") {
  const double a = 0.6009;
  const BoundCheck ce = eof_bound(rec(1.0, a, a), {}, 0.1);
  CHECK(ce.pass);
  CHECK(std::abs(ce.slack - (1.0 - (a + 0.1 / 4.0 * std::pow(a, 8)))) < 1e-15);

  // e_ac = 0: reduces to e_abc >= e_ab
  CHECK(eof_bound(rec(0.7, 0.7, 0.0), {}, 5.0).pass);
  CHECK(!eof_bound(rec(0.7, 0.71, 0.0), {}, 5.0).pass);

  for (const auto& r : sample_records(TripleMeasure::Eof, 1000, 3)) CHECK(eof_bound(r, {}, 0.0).pass);

  CHECK_THROWS_AS(eof_bound(rec(1.0, 0.1, 0.1, TripleMeasure::Tangle), {}, 0.1), AuditError);
  CHECK_THROWS_AS(eof_bound(rec(1.0, 0.1, 0.1), {1, 2, 2}, 0.1), AuditError);
}

TEST_CASE("bound coefficient uses dims and log2 of the smaller dimension") {
  // d = (4, 4, 2), c = 4096: the e_ab^8 term carries c / (4·4·log2(4)^8) = 1,
  // the e_ac^8 term carries c / (4·2·log2(2)^8) = 512.
  const BoundCheck r = bound_check(1.0, 0.5, 0.0, {4, 4, 2}, 4096.0, 8);
  CHECK(std::abs(r.slack - 0.5) < 1e-15);
  const BoundCheck s = bound_check(1.0, 0.0, 0.5, {4, 4, 2}, 4096.0, 8);
  CHECK(std::abs(s.slack - (1.0 - 512.0 * std::pow(0.5, 8))) < 1e-15);
  CHECK(!s.pass);
}

TEST_CASE("ree_infinity_bound arithmetic") {
  CHECK(ree_infinity_bound(1.0, 0.0, 0.0, {}, 123.0).pass);
  const BoundCheck half = ree_infinity_bound(1.0, 0.5, 0.5, {}, 0.0);
  CHECK(half.pass);
  CHECK(std::abs(half.slack - 0.5) < 1e-15);
  const BoundCheck fail = ree_infinity_bound(0.5, 0.5, 0.5, {}, 1.0);
  CHECK(!fail.pass);
  CHECK(std::abs(fail.slack + 0.25 * std::pow(0.5, 4)) < 1e-15);
  CHECK_THROWS_AS(ree_infinity_bound(-1.0, 0.0, 0.0, {}, 1.0), AuditError);
}

TEST_CASE("empirical_c") {
  const auto records = sample_records(TripleMeasure::Eof, 10000, 1);
  const BoundAuditReport report = empirical_c(records, {}, 8);
  CHECK(report.constrained);
  CHECK(report.c_empirical > 0.0);
  CHECK(std::isfinite(report.c_empirical));
  CHECK(report.violations == 0);  // by construction on the same sample
  CHECK(count_bound_violations(records, {}, report.c_empirical * 1.01, 8) > 0);

  const BoundAuditReport ghz = empirical_c({rec(1.0, 0.0, 0.0)}, {}, 8);
  CHECK(ghz.excluded_branches == 2);
  CHECK(!ghz.constrained);
  CHECK(ghz.c_empirical == 0.0);

  const BoundAuditReport one_side = empirical_c({rec(1.0, 0.6, 0.0)}, {}, 8);
  CHECK(one_side.excluded_branches == 1);
  CHECK(one_side.constrained);

  CHECK(empirical_c({rec(0.7, 0.7, 0.3)}, {}, 8).c_empirical == 0.0);  // e_abc = e_ab, e_ac > 0
  CHECK(empirical_c({rec(0.7, 0.7, 0.3)}, {}, 4).exponent == 4);

  CHECK_THROWS_AS(empirical_c({}, {}, 8), AuditError);
  CHECK_THROWS_AS(empirical_c(records, {}, 5), AuditError);
}

TEST_CASE("piecewise_f") {
  CHECK(piecewise_f(0.1, 0.2, 1.0) == doctest::Approx(0.2));
  CHECK(std::abs(piecewise_f(0.9, 0.9, 1.0) - 1.0) < 1e-15);
  for (double e : {0.0, 0.3, 0.85, 1.0}) CHECK(piecewise_f(0.0, e, 1.0) == e);
  CHECK(piecewise_f(0.9, 0.5, 1.0) == 0.9);  // mixed region uses max
  // never below max; equals e_ab + e_ac - 0.8 E above the knee
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const double x = i / 20.0, y = j / 20.0;
      const double f = piecewise_f(x, y, 1.0);
      CHECK(f >= std::max(x, y));
      if (x > 0.8 && y > 0.8) CHECK(std::abs(f - (x + y - 0.8)) < 1e-15);
    }
  CHECK_THROWS_AS(piecewise_f(1.2, 0.1, 1.0), AuditError);
  CHECK_THROWS_AS(piecewise_f(-0.1, 0.1, 1.0), AuditError);
}
