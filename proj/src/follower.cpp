#include "hetnet/follower.hpp"

#include "hetnet/model.hpp"

namespace hetnet {

double perceived_rate(const Bid& bid, const DecisionModel& model) {
    return bid.rate * weight(bid.guarantee, model);
}

std::optional<int> select_wifi_sp(std::span<const WifiOffer> offers, const UserProfile& user,
                                  const DecisionModel& model) {
    std::optional<int> best;
    double best_utility = 0.0;
    for (const auto& offer : offers) {
        const double u = user_benefit(perceived_rate(offer.bid, model), user) - offer.bid.price;
        if (!best || u > best_utility || (u == best_utility && offer.sp_id < *best)) {
            best = offer.sp_id;
            best_utility = u;
        }
    }
    return best;
}

namespace {

struct Totals {
    bool valid = true;
    double rate = 0.0;
    double paid = 0.0;
};

Totals totals(Strategy s, const Offer& bid_c, const Offer& bid_w, const DecisionModel& model) {
    Totals t;
    auto take = [&](const Offer& offer) {
        const Bid* bid = bid_of(offer);
        if (!bid) {
            t.valid = false;
            return;
        }
        t.rate += perceived_rate(*bid, model);
        t.paid += bid->price;
    };
    if (s.cellular) take(bid_c);
    if (s.wifi) take(bid_w);
    return t;
}

bool satisfies(const Totals& t, const UserProfile& user) {
    return t.valid && t.rate >= user.b_min * (1.0 - kRateTolerance) && user_benefit(t.rate, user) >= t.paid;
}

}  // namespace

bool is_feasible(Strategy s, const Offer& bid_c, const Offer& bid_w, const UserProfile& user,
                 const DecisionModel& model) {
    // staying out is always available
    if (!s.cellular && !s.wifi) return true;
    return satisfies(totals(s, bid_c, bid_w, model), user);
}

std::vector<Strategy> feasible_set(const Offer& bid_c, const Offer& bid_w, const UserProfile& user,
                                   const DecisionModel& model) {
    std::vector<Strategy> out;
    for (Strategy s : kStrategyOrder) {
        if (is_feasible(s, bid_c, bid_w, user, model)) out.push_back(s);
    }
    return out;
}

Response best_response(const Offer& bid_c, const Offer& bid_w, const UserProfile& user,
                       const DecisionModel& model) {
    Response best;
    for (Strategy s : kStrategyOrder) {
        if (!s.cellular && !s.wifi) continue;
        const Totals t = totals(s, bid_c, bid_w, model);
        if (!satisfies(t, user)) continue;
        const double u = user_benefit(t.rate, user) - t.paid;
        if (u > best.utility) best = {s, u};
    }
    return best;
}

}  // namespace hetnet
