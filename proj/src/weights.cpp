#include "a2lab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace a2lab {

namespace {

// level index l such that t lies in [2^{-(l+1)}, 2^{-l}); exact on subnormals
long level_of(double t) {
    return -static_cast<long>(std::ilogb(t)) - 1;
}

// the three sigma branches of one dyadic level
std::vector<Piece> lacunary_level_pieces(int a, long k) {
    const double alpha = std::ldexp(1.0, -a);
    const double lo = std::ldexp(1.0, static_cast<int>(-k - 1));
    const double hi = std::ldexp(1.0, static_cast<int>(-k));
    const double spike_l = std::ldexp(1.0 + alpha, static_cast<int>(-k - 1));
    const double spike_r = std::ldexp(1.0 - alpha, static_cast<int>(-k));
    // 2^{2k(1-alpha)}/alpha in the log domain: 2k(1-alpha) + a, all exact
    const LogPos spike_coeff = LogPos::two_pow(2.0 * static_cast<double>(k) * (1.0 - alpha)
                                               + static_cast<double>(a));
    std::vector<Piece> pieces;
    pieces.push_back({Interval(lo, spike_l),
                      PowerTerm{spike_coeff, lo, 1.0 - alpha, Orientation::ascending}});
    pieces.push_back({Interval(spike_l, spike_r),
                      PowerTerm{LogPos::one(), 0.0, alpha - 1.0, Orientation::ascending}});
    pieces.push_back({Interval(spike_r, hi),
                      PowerTerm{spike_coeff, hi, 1.0 - alpha, Orientation::descending}});
    return pieces;
}

} // namespace

SelfSimilarWeight::SelfSimilarWeight(int a, PiecewisePowerFn base_sigma, PiecewisePowerFn base_w)
    : a_(a),
      alpha_(std::ldexp(1.0, -a)),
      base_sigma_(std::move(base_sigma)),
      base_w_(std::move(base_w)) {
    level0_sigma_ = base_sigma_.integral(Interval(0.5, 1.0));
    level0_w_ = base_w_.integral(Interval(0.5, 1.0));
    sigma_fn_.bind(this, true);
    w_fn_.bind(this, false);
}

LogPos SelfSimilarWeight::sigma_level(long k) const {
    return level0_sigma_ * LogPos::two_pow(-static_cast<double>(k) * alpha_);
}

LogPos SelfSimilarWeight::w_level(long k) const {
    return level0_w_ * LogPos::two_pow(-static_cast<double>(k) * (2.0 - alpha_));
}

LogPos SelfSimilarWeight::sigma_tail(long k) const {
    return geometric_block(level0_sigma_, LogPos::two_pow(-alpha_), k);
}

LogPos SelfSimilarWeight::w_tail(long k) const {
    return geometric_block(level0_w_, LogPos::two_pow(-(2.0 - alpha_)), k);
}

void SelfSimilarWeight::SelfSimilarFnView::bind(const SelfSimilarWeight* owner, bool is_sigma) {
    owner_ = owner;
    is_sigma_ = is_sigma;
}

const PiecewisePowerFn& SelfSimilarWeight::SelfSimilarFnView::base() const {
    return is_sigma_ ? owner_->base_sigma_ : owner_->base_w_;
}

LogPos SelfSimilarWeight::SelfSimilarFnView::level_scale(long k) const {
    const double e = is_sigma_ ? owner_->alpha_ : 2.0 - owner_->alpha_;
    return LogPos::two_pow(-static_cast<double>(k) * e);
}

LogPos SelfSimilarWeight::SelfSimilarFnView::operator()(double x) const {
    if (x <= 0.0 || x >= 1.0) return LogPos();
    const long k = level_of(x);
    // f_k(x) = 2^{+-k(1-alpha)} f_0(2^k x); the base-cell argument is exact
    const double u = std::ldexp(x, static_cast<int>(k));
    const double e = (is_sigma_ ? 1.0 : -1.0) * static_cast<double>(k) * (1.0 - owner_->alpha_);
    return LogPos::two_pow(e) * base()(u);
}

LogPos SelfSimilarWeight::SelfSimilarFnView::mass_below(double t) const {
    if (t <= 0.0) return LogPos();
    if (t >= 1.0)
        return is_sigma_ ? owner_->sigma_tail(0) : owner_->w_tail(0);
    const long k = level_of(t);
    const LogPos deeper = is_sigma_ ? owner_->sigma_tail(k + 1) : owner_->w_tail(k + 1);
    const double u = std::ldexp(t, static_cast<int>(k));
    return deeper + level_scale(k) * base().integral(Interval(0.5, u));
}

LogPos SelfSimilarWeight::SelfSimilarFnView::integral(Interval iv) const {
    const double lo = std::max(iv.lo, 0.0);
    const double hi = std::min(iv.hi, 1.0);
    if (!(lo < hi)) return LogPos();
    if (lo == 0.0) return mass_below(hi);

    const long kl = level_of(lo);
    const long kh = hi >= 1.0 ? -1 : level_of(hi);
    if (kl == kh) {
        // single level: one exact base-cell query, no cancellation
        const double ul = std::ldexp(lo, static_cast<int>(kl));
        const double uh = std::ldexp(hi, static_cast<int>(kl));
        return level_scale(kl) * base().integral(Interval(ul, uh));
    }
    // partial top level, full middle levels, partial bottom level
    LogPos total;
    if (kh >= 0) {
        const double uh = std::ldexp(hi, static_cast<int>(kh));
        total += level_scale(kh) * base().integral(Interval(0.5, uh));
    }
    const long mid_from = kh + 1, mid_to = kl - 1;
    if (mid_to >= mid_from) {
        const LogPos lvl0 = is_sigma_ ? owner_->level0_sigma_ : owner_->level0_w_;
        const double e = is_sigma_ ? owner_->alpha_ : 2.0 - owner_->alpha_;
        total += geometric_block(lvl0, LogPos::two_pow(-e), mid_from, mid_to);
    }
    const double ul = std::ldexp(lo, static_cast<int>(kl));
    total += level_scale(kl) * base().integral(Interval(ul, 1.0));
    return total;
}

void SelfSimilarWeight::SelfSimilarFnView::collect_breakpoints(Interval range, std::size_t cap,
                                                               std::vector<double>& out) const {
    if (range.empty()) return;
    const double hi = std::min(range.hi, 1.0);
    const double lo = std::max(range.lo, 0.0);
    if (!(lo < hi)) return;
    if (range.contains(1.0)) out.push_back(1.0);

    const double alpha = owner_->alpha_;
    std::size_t added = 0;
    long k = hi >= 1.0 ? 0 : level_of(hi);
    // walk levels from the shallowest intersecting one downward
    while (added < cap) {
        const int ke = static_cast<int>(-k);
        const double edges[4] = {std::ldexp(1.0, ke), std::ldexp(1.0 - alpha, ke),
                                 std::ldexp(1.0 + alpha, ke - 1), std::ldexp(1.0, ke - 1)};
        for (double e : edges) {
            if (e >= lo && e <= hi && e > 0.0) {
                out.push_back(e);
                ++added;
            }
        }
        if (edges[3] <= lo || edges[3] <= 0.0 || k > 1080) break;
        ++k;
    }
}

WeightPair power_pair(double alpha, double domain_hi) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("power_pair: alpha must lie in (0, 1)");
    if (!(domain_hi >= 1.0))
        throw std::invalid_argument("power_pair: domain must cover [0, 1)");
    WeightPair pair;
    pair.kind = WeightKind::power;
    pair.alpha = alpha;
    pair.sigma = PiecewisePowerFn({Piece{
        Interval(0.0, domain_hi), PowerTerm{LogPos::one(), 0.0, 1.0 - alpha, Orientation::ascending}}});
    pair.w = reciprocal(pair.sigma);
    return pair;
}

WeightPair lacunary_pair(int a, double tail_tolerance) {
    if (a < 2) throw std::invalid_argument("lacunary_pair: requires a >= 2");
    if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0))
        throw std::invalid_argument("lacunary_pair: tolerance must lie in (0, 1)");
    const double alpha = std::ldexp(1.0, -a);

    // depth for the requested relative tail mass, capped where double
    // coordinates stop resolving dyadic levels
    const long k_tol = static_cast<long>(std::ceil(std::log2(1.0 / tail_tolerance) / alpha)) + 4;
    const long k_mat = std::min<long>(k_tol, 1000);

    std::vector<Piece> sigma_pieces;
    sigma_pieces.reserve(3 * static_cast<std::size_t>(k_mat + 1));
    for (long k = 0; k <= k_mat; ++k) {
        auto level = lacunary_level_pieces(a, k);
        sigma_pieces.insert(sigma_pieces.end(), level.begin(), level.end());
    }

    WeightPair pair;
    pair.kind = WeightKind::lacunary;
    pair.alpha = alpha;
    pair.a = a;
    pair.sigma = PiecewisePowerFn(std::move(sigma_pieces));
    pair.w = reciprocal(pair.sigma);
    pair.truncation_depth = k_mat;
    pair.achieved_tail_bound = std::exp2(-alpha * static_cast<double>(k_mat + 1));
    pair.exact = std::make_shared<SelfSimilarWeight>(
        a, PiecewisePowerFn(lacunary_level_pieces(a, 0)),
        reciprocal(PiecewisePowerFn(lacunary_level_pieces(a, 0))));
    return pair;
}

LevelIntegrals level_integrals(const WeightPair& pair, long k) {
    if (k < 0) throw std::invalid_argument("level_integrals: k must be >= 0");
    if (pair.kind == WeightKind::lacunary)
        return {pair.exact->w_level(k), pair.exact->sigma_level(k)};
    // power pair: closed forms from the k = 0 cell and exact ratios
    const double alpha = pair.alpha;
    const LogPos w0 = pair.w.integral(Interval(0.5, 1.0));
    const LogPos s0 = pair.sigma.integral(Interval(0.5, 1.0));
    return {w0 * LogPos::two_pow(-static_cast<double>(k) * alpha),
            s0 * LogPos::two_pow(-static_cast<double>(k) * (2.0 - alpha))};
}

LevelIntegrals tail_integrals(const WeightPair& pair, long k) {
    if (k < 0) throw std::invalid_argument("tail_integrals: k must be >= 0");
    if (pair.kind == WeightKind::lacunary)
        return {pair.exact->w_tail(k), pair.exact->sigma_tail(k)};
    const double alpha = pair.alpha;
    const LogPos w0 = pair.w.integral(Interval(0.5, 1.0));
    const LogPos s0 = pair.sigma.integral(Interval(0.5, 1.0));
    return {geometric_block(w0, LogPos::two_pow(-alpha), k),
            geometric_block(s0, LogPos::two_pow(-(2.0 - alpha)), k)};
}

LogPos eval_sigma(const WeightPair& pair, double x) {
    if (!(x > 0.0)) throw std::domain_error("eval_sigma: requires x > 0");
    return pair.exact_sigma()(x);
}

LogPos eval_w(const WeightPair& pair, double x) {
    if (!(x > 0.0)) throw std::domain_error("eval_w: requires x > 0");
    return pair.exact_w()(x);
}

WeightPair parse_pair_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::map<std::string, std::string> kv;
    if (colon != std::string::npos) {
        std::stringstream rest(spec.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("pair spec: expected key=value in '" + spec + "'");
            kv[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    if (kind == "power") {
        if (!kv.count("alpha")) throw std::invalid_argument("pair spec: power needs alpha=");
        return power_pair(std::stod(kv["alpha"]));
    }
    if (kind == "lacunary") {
        if (!kv.count("a")) throw std::invalid_argument("pair spec: lacunary needs a=");
        const double tol = kv.count("tol") ? std::stod(kv["tol"]) : 1e-10;
        return lacunary_pair(std::stoi(kv["a"]), tol);
    }
    throw std::invalid_argument("pair spec: unknown family '" + kind + "'");
}

} // namespace a2lab
