#include "hetnet/leader.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hetnet/model.hpp"

namespace hetnet {

double marginal_bw(double rate, double b_min, const LinkState& link) {
    if (!(rate > b_min)) throw InfeasibleError("rate must exceed b_min for a marginal bid");
    if (!(link.mean_snr > 0.0)) throw InfeasibleError("link has no signal");
    return rate * std::numbers::ln2 / std::log1p(link.mean_snr * std::log(rate / b_min));
}

double bid_profit(double rate, const SpProfile& sp, const LinkState& link, double b_min) {
    return sp_price(rate, sp) - sp_cost(rate, marginal_bw(rate, b_min, link), sp);
}

namespace {

// Rate that minimises the marginal bandwidth: with x = ln(b/b_min) it solves
// (1 + g x) ln(1 + g x) = g.
double least_bandwidth_rate(double b_min, double snr) {
    auto f = [snr](double x) { return (1.0 + snr * x) * std::log1p(snr * x) - snr; };
    double lo = 0.0;
    double hi = 1.0;
    while (f(hi) < 0.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return b_min * std::exp(0.5 * (lo + hi));
}

// Boundary of {bw(b) <= budget} between a feasible and an infeasible rate.
template <class Need>
double feasible_edge(double feasible, double infeasible, double budget, Need need) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (feasible + infeasible);
        if (mid == feasible || mid == infeasible) break;
        (need(mid) <= budget ? feasible : infeasible) = mid;
    }
    return feasible;
}

template <class Fn>
double golden_max(double lo, double hi, Fn fn) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - r * (hi - lo);
    double b = lo + r * (hi - lo);
    double fa = fn(a);
    double fb = fn(b);
    for (int i = 0; i < 300 && hi - lo > kBidTolerance; ++i) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + r * (hi - lo);
            fb = fn(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - r * (hi - lo);
            fa = fn(a);
        }
    }
    return fa < fb ? b : a;
}

}  // namespace

Offer optimize_bid(const SpProfile& sp, const LinkState& link, double b_min) {
    if (!link.covered || !(link.bw_max > 0.0) || !(link.mean_snr > 0.0)) return NoBid{NoBidReason::Uncovered};
    const double lower = b_min * (1.0 + 1e-6);
    const double upper = link.b_max;
    if (!(upper > lower)) return NoBid{NoBidReason::Infeasible};

    auto need = [&](double b) { return marginal_bw(b, b_min, link); };
    auto profit = [&](double b) { return bid_profit(b, sp, link, b_min); };

    const double b_star = std::clamp(least_bandwidth_rate(b_min, link.mean_snr), lower, upper);
    if (need(b_star) > link.bw_max) return NoBid{NoBidReason::Infeasible};
    const double b_lo = need(lower) <= link.bw_max ? lower : feasible_edge(b_star, lower, link.bw_max, need);
    const double b_hi = need(upper) <= link.bw_max ? upper : feasible_edge(b_star, upper, link.bw_max, need);

    std::vector<double> grid(kBidGridPoints);
    const double step = std::log(b_hi / b_lo) / (kBidGridPoints - 1);
    for (int i = 0; i < kBidGridPoints; ++i) grid[i] = b_lo * std::exp(step * i);
    grid.front() = b_lo;
    grid.back() = b_hi;

    std::size_t arg = 0;
    double best = profit(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double v = profit(grid[i]);
        if (v > best) {
            best = v;
            arg = i;
        }
    }
    double rate = grid[arg];
    const double lo = grid[arg == 0 ? 0 : arg - 1];
    const double hi = grid[std::min(arg + 1, grid.size() - 1)];
    if (hi > lo) {
        const double refined = golden_max(lo, hi, profit);
        const double v = profit(refined);
        if (v > best) {
            best = v;
            rate = refined;
        }
    }
    if (best < 0.0) return NoBid{NoBidReason::Unprofitable};
    return Bid{rate, sp_price(rate, sp), need(rate), b_min / rate};
}

Offer expand_bw_pt(const Bid& bid, const DecisionModel& model, const LinkState& link, std::optional<double> budget) {
    // below 1/e the user already overestimates, so the EUT bandwidth is kept
    if (!model.is_pt() || bid.guarantee <= kInvE) return bid;
    const double lambda = weight_inverse(bid.guarantee, model);
    if (lambda >= 1.0 || !(link.mean_snr > 0.0)) return NoBid{NoBidReason::ExpansionInfeasible};
    const double bw = guarantee_inverse_bw(bid.rate, lambda, link);
    if (bw > budget.value_or(link.bw_max)) return NoBid{NoBidReason::BudgetExhausted};
    return Bid{bid.rate, bid.price, bw, lambda};
}

bool participation_check(const Bid& bid, double acceptance_prob, const SpProfile& sp) {
    if (!(acceptance_prob >= 0.0 && acceptance_prob <= 1.0)) throw DomainError("acceptance probability outside [0,1]");
    return acceptance_prob * bid.price - sp_cost(bid.rate, bid.bandwidth, sp) >= 0.0;
}

}  // namespace hetnet
