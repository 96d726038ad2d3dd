#include "a2lab/operators.hpp"

#include "a2lab/weights.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace a2lab;

namespace {

PiecewisePowerFn unit_box() {
    return PiecewisePowerFn(
        {Piece{{0.0, 1.0}, PowerTerm{LogPos::one(), 0.0, 0.0, Orientation::ascending}}});
}

} // namespace

TEST_CASE("sparse_apply counts nested tails") {
    const SparseFamily fam = make_sparse_family(nested_family(10), 0.5);
    const StepFn out = sparse_apply(fam, unit_box());
    for (int n = 1; n <= 9; ++n) {
        const double x = 0.75 * std::ldexp(1.0, -n); // inside [2^{-(n+1)}, 2^{-n})
        CHECK(out(x).value() == doctest::Approx(static_cast<double>(n)).epsilon(1e-13));
    }
    CHECK(out(0.6).is_zero());

    SUBCASE("empty family gives the zero function") {
        const StepFn zero = sparse_apply(std::vector<Interval>{}, unit_box());
        CHECK(zero.empty());
        CHECK(zero(0.3).is_zero());
    }

    SUBCASE("singleton is the average times the indicator") {
        const WeightPair pair = power_pair(0.5);
        const StepFn one = sparse_apply(std::vector<Interval>{{0.25, 0.75}}, pair.sigma);
        CHECK(one(0.5).log2_value() ==
              doctest::Approx(average(pair.sigma, {0.25, 0.75}).log2_value()));
        CHECK(one(0.1).is_zero());
    }
}

TEST_CASE("strong sparse apply dominates the sparse operator") {
    const WeightPair pair = power_pair(0.25);
    const PiecewisePowerFn sigma1 = multiply_step(pair.sigma, indicator({0.0, 1.0}));
    const SparseFamily fam = make_sparse_family(nested_family(16), 0.5);
    const StepFn weakop = sparse_apply(fam, sigma1);
    const StrongApplyResult strong = strong_sparse_apply(fam, sigma1);
    CHECK(strong.all_converged);

    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 3000; ++i) {
        const double x = unif(rng);
        CHECK(!(strong.output(x) < weakop(x)));
    }

    // M_A f <= hl_maximal_at(f, x, seeded with A's attaining interval)
    for (std::size_t i = 0; i < fam.intervals.size(); i += 5) {
        const Interval A = fam.intervals[i];
        const double x = A.lo + 0.5 * A.length();
        const LogPos hl =
            hl_maximal_at(sigma1, x, {}, strong.per_interval[i].attaining).value;
        CHECK(!(hl < strong.per_interval[i].value));
    }
}

TEST_CASE("singleton strong apply of an indicator is the indicator") {
    const SparseFamily fam = make_sparse_family({{0.0, 1.0}}, 0.5);
    const StrongApplyResult r = strong_sparse_apply(fam, unit_box());
    CHECK(r.output(0.5).value() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.output(1.5).is_zero());
}

TEST_CASE("operators commute with dyadic scaling exactly") {
    const WeightPair pair = power_pair(0.25);
    const PiecewisePowerFn sigma1 = multiply_step(pair.sigma, indicator({0.0, 1.0}));
    const PiecewisePowerFn scaled = scale(sigma1, LogPos::two_pow(40.0));
    const SparseFamily fam = make_sparse_family(nested_family(8), 0.5);

    const StepFn a = sparse_apply(fam, sigma1);
    const StepFn b = sparse_apply(fam, scaled);
    for (std::size_t i = 0; i < a.cells(); ++i) {
        if (a.cell_value(i).is_zero()) {
            CHECK(b.cell_value(i).is_zero());
            continue;
        }
        CHECK(std::fabs(b.cell_value(i).log2_value() - (a.cell_value(i).log2_value() + 40.0)) < 1e-12);
    }

    const StrongApplyResult sa = strong_sparse_apply(fam, sigma1);
    const StrongApplyResult sb = strong_sparse_apply(fam, scaled);
    for (std::size_t i = 0; i < sa.per_interval.size(); ++i)
        CHECK(std::fabs(sb.per_interval[i].value.log2_value() -
                        (sa.per_interval[i].value.log2_value() + 40.0)) < 1e-12);
}

TEST_CASE("band family strong apply matches the tail-average scale") {
    const int a = 4;
    const WeightPair pair = lacunary_pair(a);
    const SparseFamily fam = make_sparse_family(band_family(a, 3, 20), 0.5);
    const StrongApplyResult strong = strong_sparse_apply(fam, pair.exact_sigma());
    // every member of level k carries M_k = 2^k int_0^{2^-k} sigma, within
    // factor 4 of 2^{k(1-alpha)}/alpha times a bounded constant
    std::size_t idx = 0;
    for (const Interval& b : fam.intervals) {
        const long k = std::lround(-std::log2(b.hi));
        const LogPos expected =
            tail_integrals(pair, k).sigma_mass * LogPos::two_pow(static_cast<double>(k));
        CHECK(std::fabs(strong.per_interval[idx].value.log2_value() -
                        expected.log2_value()) < 1e-8);
        ++idx;
    }
}

TEST_CASE("l2w norm squared") {
    const double alpha = 0.25;
    const WeightPair pair = power_pair(alpha);

    SUBCASE("indicator against the power weight") {
        const StepFn h({0.0, 1.0}, {LogPos::one()});
        CHECK(l2w_norm_sq(h, pair.w).value() == doctest::Approx(1.0 / alpha).epsilon(1e-13));
        CHECK(l2w_norm_sq(StepFn(), pair.w).is_zero());
    }

    SUBCASE("staircase against the closed form sum n^2 r^n = r(1+r)/(1-r)^3") {
        const int N = 40;
        std::vector<double> edges{std::ldexp(1.0, -(N + 1))};
        std::vector<LogPos> vals;
        for (int n = N; n >= 1; --n) {
            edges.push_back(std::ldexp(1.0, -n));
            vals.push_back(LogPos::from_value(static_cast<double>(n)));
        }
        const StepFn h(edges, vals);
        const double got = l2w_norm_sq(h, pair.w).value();
        double expect = 0.0;
        for (int n = 1; n <= N; ++n)
            expect += n * n * std::exp2(-n * alpha) * (1.0 - std::exp2(-alpha)) / alpha;
        CHECK(got == doctest::Approx(expect).epsilon(1e-12));

        // N -> infinity limit: (1-r)/alpha * r(1+r)/(1-r)^3
        const double r = std::exp2(-alpha);
        const double limit = r * (1.0 + r) / ((1.0 - r) * (1.0 - r)) / alpha;
        const std::vector<double> big_edges = [&] {
            std::vector<double> e{std::ldexp(1.0, -400)};
            for (int n = 399; n >= 1; --n) e.push_back(std::ldexp(1.0, -n));
            return e;
        }();
        std::vector<LogPos> big_vals;
        for (int n = 399; n >= 1; --n) big_vals.push_back(LogPos::from_value(n));
        const double asymptotic = l2w_norm_sq(StepFn(big_edges, big_vals), pair.w).value();
        CHECK(asymptotic == doctest::Approx(limit).epsilon(1e-8));
    }
}

TEST_CASE("weak l2w norm") {
    const double alpha = 0.25;
    const WeightPair pair = power_pair(alpha);

    SUBCASE("constant level set") {
        const StepFn h({0.0, 1.0}, {LogPos::from_value(3.0)});
        const double w01 = pair.w.integral({0.0, 1.0}).value();
        CHECK(weak_l2w_norm(h, pair.w).value() ==
              doctest::Approx(3.0 * std::sqrt(w01)).epsilon(1e-13));
    }

    SUBCASE("chebyshev: weak <= strong on random step functions") {
        std::mt19937_64 rng(53);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> edges{0.0};
            std::vector<LogPos> vals;
            for (int i = 0; i < 12; ++i) {
                edges.push_back(edges.back() + 0.01 + 0.1 * unif(rng));
                vals.push_back(unif(rng) < 0.15 ? LogPos()
                                                : LogPos::from_value(5.0 * unif(rng)));
            }
            const StepFn h(edges, vals);
            const LogPos weak = weak_l2w_norm(h, pair.w);
            const LogPos strong = l2w_norm_sq(h, pair.w);
            CHECK(!(weak * weak > strong));
        }
    }

    SUBCASE("staircase maximizes n^2 w([0,2^-n))") {
        const int N = 200;
        std::vector<double> edges{std::ldexp(1.0, -(N + 1))};
        std::vector<LogPos> vals;
        for (int n = N; n >= 1; --n) {
            edges.push_back(std::ldexp(1.0, -n));
            vals.push_back(LogPos::from_value(static_cast<double>(n)));
        }
        const StepFn h(edges, vals);
        const double got = weak_l2w_norm(h, pair.w).value();
        double best = 0.0;
        for (int n = 1; n <= N; ++n) {
            // {h >= n} = [2^{-(N+1)}, 2^{-n})
            const double mass = (std::exp2(-n * alpha) - std::exp2(-(N + 1.0) * alpha)) / alpha;
            best = std::max(best, n * n * mass);
        }
        CHECK(got * got == doctest::Approx(best).epsilon(1e-10));
    }
}
