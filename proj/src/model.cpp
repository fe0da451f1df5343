#include "hetnet/model.hpp"

#include <cmath>

namespace hetnet {

double user_benefit(double b_joint, const UserProfile& user) {
    if (b_joint < 0.0) throw DomainError("aggregate rate must be nonnegative");
    return user.delta * std::pow(b_joint, 1.0 / user.theta);
}

double doubling_gap(double m, const UserProfile& user) {
    return user.delta * (std::exp2(1.0 / user.theta) - 1.0) * std::pow(m, 1.0 / user.theta);
}

double user_utility(Strategy s, const Offer& bid_c, const Offer& bid_w, const UserProfile& user,
                    double perceived_gc, double perceived_gw) {
    double rate = 0.0;
    double paid = 0.0;
    auto take = [&](const Offer& offer, double g) {
        const Bid* bid = bid_of(offer);
        if (!bid) throw DomainError("cannot accept an absent bid");
        rate += bid->rate * g;
        paid += bid->price;
    };
    if (s.cellular) take(bid_c, perceived_gc);
    if (s.wifi) take(bid_w, perceived_gw);
    if (!s.cellular && !s.wifi) return 0.0;
    return user_benefit(rate, user) - paid;
}

double sp_price(double rate, const SpProfile& sp) { return sp.alpha * std::pow(rate, sp.beta); }

double sp_cost(double rate, double bw, const SpProfile& sp) { return sp.cost_rate * rate + sp.cost_bw * bw; }

double sp_utility(bool accepted, const Offer& offer, const SpProfile& sp) {
    const Bid* bid = bid_of(offer);
    if (!bid) return 0.0;
    return (accepted ? bid->price : 0.0) - sp_cost(bid->rate, bid->bandwidth, sp);
}

}  // namespace hetnet
