#pragma once

#include "a2lab/piecewise_fn.hpp"

#include <memory>
#include <string>

namespace a2lab {

enum class WeightKind { power, lacunary };

/// Exact representation of the lacunary mixture: one base cell on [1/2, 1)
/// plus the exact scaling law sigma(x/2) = 2^{1-alpha} sigma(x). Level masses
/// follow the exact geometric recursions
///   sigma: ratio 2^{-alpha},   w: ratio 2^{-(2-alpha)},
/// so integrals over [0, t) are closed forms at any depth -- far beyond the
/// ~1000 dyadic levels that survive as double coordinates.
class SelfSimilarWeight {
public:
    SelfSimilarWeight(int a, PiecewisePowerFn base_sigma, PiecewisePowerFn base_w);
    SelfSimilarWeight(const SelfSimilarWeight&) = delete;
    SelfSimilarWeight& operator=(const SelfSimilarWeight&) = delete;

    int a() const { return a_; }
    double alpha() const { return alpha_; }
    const PiecewisePowerFn& base_sigma() const { return base_sigma_; }
    const PiecewisePowerFn& base_w() const { return base_w_; }
    LogPos scale_factor() const { return LogPos::two_pow(1.0 - alpha_); } // value ratio per halving
    double tail_exponent_sigma() const { return alpha_; }
    double tail_exponent_w() const { return 2.0 - alpha_; }

    LogPos sigma_level(long k) const; // integral over [2^{-(k+1)}, 2^{-k})
    LogPos w_level(long k) const;
    LogPos sigma_tail(long k) const;  // integral over [0, 2^{-k})
    LogPos w_tail(long k) const;

    const Integrand& sigma_fn() const { return sigma_fn_; }
    const Integrand& w_fn() const { return w_fn_; }

private:
    friend class SelfSimilarFnView;
    class SelfSimilarFnView final : public Integrand {
    public:
        SelfSimilarFnView() = default;
        void bind(const SelfSimilarWeight* owner, bool is_sigma);
        LogPos integral(Interval iv) const override;
        LogPos operator()(double x) const override;
        Interval support() const override { return Interval(0.0, 1.0); }
        void collect_breakpoints(Interval range, std::size_t cap,
                                 std::vector<double>& out) const override;

    private:
        LogPos mass_below(double t) const; // integral over (0, t]
        const PiecewisePowerFn& base() const;
        LogPos level_scale(long k) const;  // mass scale of level k
        const SelfSimilarWeight* owner_ = nullptr;
        bool is_sigma_ = true;
    };

    int a_;
    double alpha_;
    PiecewisePowerFn base_sigma_, base_w_;
    LogPos level0_sigma_, level0_w_;
    SelfSimilarFnView sigma_fn_, w_fn_;
};

/// A weight and its dual sigma = w^{-1} with the generating parameter. The
/// explicit piecewise representation is truncated for the lacunary family;
/// exact_sigma()/exact_w() are always exact (they fall back to the explicit
/// function for the power pair, where it is already exact).
struct WeightPair {
    WeightKind kind = WeightKind::power;
    double alpha = 0.0;
    int a = 0; // valid for the lacunary pair (alpha = 2^-a)
    PiecewisePowerFn sigma;
    PiecewisePowerFn w;
    std::shared_ptr<const SelfSimilarWeight> exact; // lacunary only
    long truncation_depth = 0;       // deepest materialized level
    double achieved_tail_bound = 0;  // relative sigma mass beyond the truncation

    const Integrand& exact_sigma() const { return exact ? exact->sigma_fn() : sigma; }
    const Integrand& exact_w() const { return exact ? exact->w_fn() : w; }
};

/// Dual power weights w = x^{alpha-1}, sigma = x^{1-alpha} on [0, domain_hi).
WeightPair power_pair(double alpha, double domain_hi = 2.0);

/// The lacunary mixture with alpha = 2^-a on (0, 1): per dyadic level k the
/// three displayed branches
///   (2^{2k(1-a)}/a)(x - 2^{-(k+1)})^{1-a},  x^{alpha-1},
///   (2^{2k(1-a)}/a)(2^{-k} - x)^{1-a},
/// materialized down to depth min(ceil(log2(1/tol)/alpha) + 4, 1000), paired
/// with the exact self-similar representation (no truncation).
WeightPair lacunary_pair(int a, double tail_tolerance = 1e-10);

struct LevelIntegrals {
    LogPos w_mass;
    LogPos sigma_mass;
};

/// Exact integrals over the dyadic level [2^{-(k+1)}, 2^{-k}), computed from
/// the k = 0 cell and the exact per-level ratios.
LevelIntegrals level_integrals(const WeightPair& pair, long k);

/// Exact integrals over [0, 2^{-k}) via the geometric closed form.
LevelIntegrals tail_integrals(const WeightPair& pair, long k);

LogPos eval_sigma(const WeightPair& pair, double x); // x > 0 required
LogPos eval_w(const WeightPair& pair, double x);

/// Builder spec strings: "power:alpha=0.25" and "lacunary:a=6,tol=1e-10".
WeightPair parse_pair_spec(const std::string& spec);

} // namespace a2lab
