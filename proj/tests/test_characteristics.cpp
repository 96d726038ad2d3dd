#include "a2lab/characteristics.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace a2lab;

namespace {

WeightPair flat_pair() {
    WeightPair pair;
    pair.kind = WeightKind::power;
    pair.alpha = 0.5;
    pair.sigma = PiecewisePowerFn(
        {Piece{{0.0, 2.0}, PowerTerm{LogPos::one(), 0.0, 0.0, Orientation::ascending}}});
    pair.w = reciprocal(pair.sigma);
    return pair;
}

// halved coordinates: sigma(2x) piece by piece
WeightPair dilate_half(const WeightPair& src) {
    auto transform = [](const PiecewisePowerFn& f) {
        std::vector<Piece> out;
        for (const Piece& p : f.pieces()) {
            PowerTerm t = p.term;
            t.offset = p.term.offset / 2.0;
            t.coeff = p.term.coeff * LogPos::two_pow(p.term.exponent);
            out.push_back(Piece{Interval(p.span.lo / 2.0, p.span.hi / 2.0), t});
        }
        return PiecewisePowerFn(std::move(out));
    };
    WeightPair pair;
    pair.kind = src.kind;
    pair.alpha = src.alpha;
    pair.a = src.a;
    pair.sigma = transform(src.sigma);
    pair.w = transform(src.w);
    return pair;
}

} // namespace

TEST_CASE("a2 products and the dyadic scan") {
    const WeightPair ones = flat_pair();
    CHECK(a2_product(ones, {0.0, 1.0}).log2_value() == doctest::Approx(0.0));
    CHECK(a2_dyadic(ones, 8).value() == doctest::Approx(1.0).epsilon(1e-13));

    const WeightPair p = power_pair(0.25);
    const double expect = 1.0 / (0.25 * 1.75);
    CHECK(a2_dyadic(p, 12).value() == doctest::Approx(expect).epsilon(1e-12));

    // lacunary at alpha = 2^-4, depth 24: alpha * value within [1/16, 16]
    const WeightPair lac = lacunary_pair(4);
    const double v = a2_dyadic(lac, 24).value() * lac.alpha;
    CHECK(v > 1.0 / 16.0);
    CHECK(v < 16.0);
}

TEST_CASE("a2_search basics") {
    const WeightPair ones = flat_pair();
    const A2Report flat = a2_search(ones);
    CHECK(flat.value.value() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(!(flat.value < flat.dyadic_value));

    const WeightPair p = power_pair(0.25);
    const A2Report rep = a2_search(p);
    const double expect = 16.0 / 7.0; // 1/(alpha(2-alpha))
    CHECK(rep.value.value() >= expect * (1.0 - 1e-10));
    CHECK(rep.value.value() <= 2.0 * expect);
    CHECK(!(rep.value < rep.dyadic_value));
    CHECK(rep.value.value() >= 1.0);
    CHECK(rep.converged);
}

TEST_CASE("a2_search is scale invariant (exactly, for dyadic constants)") {
    const WeightPair p = lacunary_pair(4);
    WeightPair scaled = p;
    scaled.sigma = scale(p.sigma, LogPos::two_pow(13.0));
    scaled.w = scale(p.w, LogPos::two_pow(-13.0));
    scaled.exact.reset(); // force the explicit route on both sides
    WeightPair base = p;
    base.exact.reset();

    A2SearchConfig cfg;
    cfg.grid = 512;
    cfg.refinement_depth = 40;
    cfg.convergence_probe = false;
    const A2Report r1 = a2_search(base, cfg);
    const A2Report r2 = a2_search(scaled, cfg);
    CHECK(std::fabs(r2.value.log2_value() - r1.value.log2_value()) < 1e-12);
}

TEST_CASE("a2_search is dilation invariant on the lacunary pair") {
    const WeightPair p = lacunary_pair(4);
    WeightPair base = p;
    base.exact.reset();
    const WeightPair halved = dilate_half(base);
    A2SearchConfig cfg;
    cfg.grid = 1024;
    cfg.refinement_depth = 64;
    cfg.convergence_probe = false;
    const A2Report r1 = a2_search(base, cfg);
    const A2Report r2 = a2_search(halved, cfg);
    CHECK(std::fabs(r1.value.log2_value() - r2.value.log2_value()) < 1e-9);
}

TEST_CASE("a_infty estimates") {
    const WeightPair ones = flat_pair();
    const AInfReport flat = a_infty_estimate(ones.w, {{0.0, 1.0}, {0.25, 0.75}});
    CHECK(flat.value.value() == doctest::Approx(1.0).epsilon(1e-9));

    // power weight: true value for I = [0,1] is 1/alpha; the certified lower
    // bound must land inside [1, 1/alpha] and close to it
    const double alpha = 0.5;
    const WeightPair p = power_pair(alpha);
    const AInfReport rep = a_infty_estimate(p.w, {{0.0, 1.0}});
    CHECK(rep.value.value() >= 1.0);
    CHECK(rep.value.value() <= 1.0 / alpha + 1e-9);
    CHECK(rep.value.value() >= 0.8 / alpha);

    SUBCASE("grid refinement never decreases the estimate") {
        AInfConfig coarse;
        coarse.grid = 64;
        AInfConfig fine;
        fine.grid = 256;
        const LogPos lo = a_infty_estimate(p.w, {{0.0, 1.0}}, coarse).value;
        const LogPos hi = a_infty_estimate(p.w, {{0.0, 1.0}}, fine).value;
        CHECK(!(hi < lo));
    }

    SUBCASE("zero-mass candidate is a domain error") {
        CHECK_THROWS_AS(a_infty_estimate(p.w, {{3.5, 3.75}}), std::domain_error);
    }
}

TEST_CASE("reverse Holder checks") {
    const WeightPair ones = flat_pair();
    const CheckOutcome flat = reverse_holder_check(ones.w, {0.0, 1.0}, 1.0);
    CHECK(flat.pass);
    CHECK(flat.margin_log2 == doctest::Approx(1.0).epsilon(1e-12)); // both sides 1 vs 2

    // w = x^{-1/2}, eps = 1/4: <w^{5/4}> = 8/3 against 2 * 2^{5/4}
    const WeightPair p = power_pair(0.5);
    const CheckOutcome out = reverse_holder_check(p.w, {0.0, 1.0}, 1.0);
    CHECK(out.pass);
    const double expected_margin = std::log2(2.0 * std::pow(2.0, 1.25) / (8.0 / 3.0));
    CHECK(out.margin_log2 == doctest::Approx(expected_margin).epsilon(1e-12));

    // eps too aggressive makes w^{1+eps} non-integrable: reported, not thrown
    const WeightPair q = power_pair(0.05); // w = x^{-0.95}
    const CheckOutcome hot = reverse_holder_check(q.w, {0.0, 1.0}, 1.0); // eps = 1/4
    CHECK(!hot.evaluated);

    SUBCASE("lacunary weight with the estimated A_infty constant") {
        const WeightPair lac = lacunary_pair(4);
        const AInfReport ainf = a_infty_estimate(lac.w, default_ainf_candidates(lac));
        CHECK(ainf.value.value() >= 1.0);
        const double one_plus_eps = 1.0 + 1.0 / (4.0 * ainf.value.value());
        const PiecewisePowerFn w_pow = pow_scalar(lac.w, one_plus_eps);
        std::mt19937_64 rng(211);
        std::uniform_int_distribution<int> gen(0, 30);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        int passed = 0;
        for (int i = 0; i < 100; ++i) {
            const int g = gen(rng);
            const double h = std::ldexp(1.0, -g);
            const double lo = std::floor(unif(rng) * std::ldexp(1.0, g)) * h;
            const CheckOutcome o =
                reverse_holder_check_pre(w_pow, lac.w, one_plus_eps, {lo, lo + h});
            if (o.evaluated && o.pass) ++passed;
        }
        CHECK(passed == 100);
    }
}

TEST_CASE("subset mass lemma checks") {
    const double alpha = 0.5;
    const WeightPair p = power_pair(alpha);
    const double ainf = 1.0 / alpha; // exact for the restricted power weight

    SUBCASE("E = Q and E empty always pass") {
        CHECK(subset_mass_check(p.w, {0.0, 1.0}, {{0.0, 1.0}}, 1.0, ainf).pass);
        CHECK(subset_mass_check(p.w, {0.0, 1.0}, {}, 1.0, ainf).pass);
    }

    SUBCASE("closed-form pinning for Q = [0,1], E = [0,t]") {
        // w(E)/w(Q) = t^{1/2}; passes iff t^{1/2} <= 2 t^{c/ainf}
        const double t = 0.01;
        CHECK(subset_mass_check(p.w, {0.0, 1.0}, {{0.0, t}}, 0.5, ainf).pass);
        CHECK(!subset_mass_check(p.w, {0.0, 1.0}, {{0.0, t}}, 8.0, ainf).pass);
        const CheckOutcome o = subset_mass_check(p.w, {0.0, 1.0}, {{0.0, t}}, 0.5, ainf);
        const double expect_margin =
            std::log2(2.0 * std::pow(t, 0.5 / ainf)) - std::log2(std::sqrt(t));
        CHECK(o.margin_log2 == doctest::Approx(expect_margin).epsilon(1e-10));
    }

    SUBCASE("bad subsets are rejected") {
        CHECK_THROWS_AS(subset_mass_check(p.w, {0.0, 1.0}, {{0.5, 1.5}}, 1.0, ainf),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            subset_mass_check(p.w, {0.0, 1.0}, {{0.1, 0.4}, {0.3, 0.6}}, 1.0, ainf),
            std::invalid_argument);
    }
}
