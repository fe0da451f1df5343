#include "hetnet/equilibrium.hpp"

#include <utility>

#include "hetnet/follower.hpp"
#include "hetnet/leader.hpp"
#include "hetnet/model.hpp"

namespace hetnet {

NeThresholds thresholds(const Offer& bid_w, const Offer& bid_c, const UserProfile& user,
                        const DecisionModel& model) {
    NeThresholds t;
    t.single_benefit = user_benefit(user.b_min, user);
    t.doubling_gap = doubling_gap(user.b_min, user);
    if (const Bid* w = bid_of(bid_w)) {
        t.price_w = w->price;
        t.perceived_joint_rate += perceived_rate(*w, model);
    }
    if (const Bid* c = bid_of(bid_c)) {
        t.price_c = c->price;
        t.perceived_joint_rate += perceived_rate(*c, model);
    }
    t.perceived_joint_benefit = user_benefit(t.perceived_joint_rate, user);
    return t;
}

NeClass eut_symmetric_class(const Bid& bid, const UserProfile& user) {
    if (user_benefit(user.b_min, user) < bid.price) return NeClass::Reject00;
    if (doubling_gap(user.b_min, user) >= bid.price) return NeClass::Both11;
    return NeClass::Mixed0110;
}

NeClass eut_asymmetric_class(const Bid& bid_w, const Bid& bid_c, const UserProfile& user) {
    const bool wifi_cheaper = bid_w.price <= bid_c.price;
    const double cheap = wifi_cheaper ? bid_w.price : bid_c.price;
    const double dear = wifi_cheaper ? bid_c.price : bid_w.price;
    if (user_benefit(user.b_min, user) < cheap) return NeClass::Reject00;
    if (doubling_gap(user.b_min, user) >= dear) return NeClass::Both11;
    return wifi_cheaper ? NeClass::WifiOnly01 : NeClass::CellOnly10;
}

NeClass pt_class(const Offer& bid_w, const Offer& bid_c, const UserProfile& user, const DecisionModel& model) {
    const double floor = user.b_min * (1.0 - kRateTolerance);
    NeClass best = NeClass::Reject00;
    double best_u = 0.0;
    auto consider = [&](NeClass c, double rate, double paid) {
        if (rate < floor) return;
        const double benefit = user_benefit(rate, user);
        if (benefit < paid) return;
        if (benefit - paid > best_u) {
            best = c;
            best_u = benefit - paid;
        }
    };
    const Bid* w = bid_of(bid_w);
    const Bid* c = bid_of(bid_c);
    if (w) consider(NeClass::WifiOnly01, perceived_rate(*w, model), w->price);
    if (c) consider(NeClass::CellOnly10, perceived_rate(*c, model), c->price);
    if (w && c) consider(NeClass::Both11, perceived_rate(*w, model) + perceived_rate(*c, model), w->price + c->price);
    return best;
}

namespace {

Strategy strategy_of(NeClass c) {
    switch (c) {
        case NeClass::WifiOnly01: return {false, true};
        case NeClass::CellOnly10: return {true, false};
        case NeClass::Both11: return {true, true};
        default: return {};
    }
}

GameOutcome realize(NeClass label, Strategy s, Offer bid_w, Offer bid_c, const UserProfile& user,
                    const DecisionModel& model, ProviderPair sps) {
    GameOutcome out;
    out.ne_class = label;
    out.strategy_draw = s;
    const Bid* w = bid_of(bid_w);
    const Bid* c = bid_of(bid_c);
    out.u_user = user_utility(s, bid_c, bid_w, user, c ? weight(c->guarantee, model) : 0.0,
                              w ? weight(w->guarantee, model) : 0.0);
    out.u_sp_w = sp_utility(s.wifi, bid_w, sps.wifi);
    out.u_sp_c = sp_utility(s.cellular, bid_c, sps.cellular);
    out.bid_w = std::move(bid_w);
    out.bid_c = std::move(bid_c);
    return out;
}

GameOutcome realize_mixed(const Offer& bid_w, const Offer& bid_c, MixedBranch branch, const UserProfile& user,
                          const DecisionModel& model, ProviderPair sps) {
    if (branch == MixedBranch::Wifi)
        return realize(NeClass::Mixed0110, {false, true}, bid_w, NoBid{NoBidReason::Silent}, user, model, sps);
    return realize(NeClass::Mixed0110, {true, false}, NoBid{NoBidReason::Silent}, bid_c, user, model, sps);
}

}  // namespace

GameOutcome classify_eut_symmetric(const Bid& bid, const UserProfile& user, ProviderPair sps, MixedBranch branch) {
    const auto eut = DecisionModel::eut();
    const NeClass c = eut_symmetric_class(bid, user);
    if (c == NeClass::Mixed0110) return realize_mixed(bid, bid, branch, user, eut, sps);
    return realize(c, strategy_of(c), bid, bid, user, eut, sps);
}

GameOutcome classify_eut_asymmetric(const Bid& bid_w, const Bid& bid_c, const UserProfile& user, ProviderPair sps) {
    const NeClass c = eut_asymmetric_class(bid_w, bid_c, user);
    return realize(c, strategy_of(c), bid_w, bid_c, user, DecisionModel::eut(), sps);
}

GameOutcome classify_pt(const Offer& bid_w, const Offer& bid_c, const UserProfile& user,
                        const DecisionModel& model, ProviderPair sps) {
    const NeClass c = pt_class(bid_w, bid_c, user, model);
    return realize(c, strategy_of(c), bid_w, bid_c, user, model, sps);
}

std::vector<Offer> make_offers(std::span<const ProviderLink> links, double b_min) {
    std::vector<Offer> offers;
    offers.reserve(links.size());
    for (const auto& l : links) offers.push_back(optimize_bid(l.profile, l.link, b_min));
    return offers;
}

GameOutcome play_game(const UserProfile& user, std::span<const ProviderLink> links, std::span<const Offer> offers,
                      const DecisionModel& model, bool expansion_enabled, std::mt19937_64& rng) {
    static const SpProfile kAbsentWifi = [] {
        SpProfile p;
        p.kind = SpKind::WiFi;
        return p;
    }();
    static const SpProfile kAbsentCellular;

    std::optional<std::size_t> cell_idx;
    std::vector<WifiOffer> wifi_offers;
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (links[i].profile.kind == SpKind::Cellular) {
            if (!cell_idx) cell_idx = i;
        } else if (const Bid* b = bid_of(offers[i])) {
            wifi_offers.push_back({links[i].id, *b});
        }
    }
    std::optional<std::size_t> wifi_idx;
    if (auto id = select_wifi_sp(wifi_offers, user, model)) {
        for (std::size_t i = 0; i < links.size(); ++i)
            if (links[i].id == *id) wifi_idx = i;
    }

    Offer bid_c = cell_idx ? offers[*cell_idx] : Offer{NoBid{NoBidReason::Uncovered}};
    Offer bid_w = wifi_idx ? offers[*wifi_idx] : Offer{NoBid{NoBidReason::Uncovered}};

    auto settle = [&](Offer& offer, std::optional<std::size_t> idx) {
        const Bid* b = bid_of(offer);
        if (!b) return;
        const ProviderLink& pl = links[*idx];
        if (expansion_enabled && model.is_pt()) {
            offer = expand_bw_pt(*b, model, pl.link, pl.expansion_budget);
            b = bid_of(offer);
            if (!b) return;
        }
        if (!participation_check(*b, 1.0, pl.profile)) offer = NoBid{NoBidReason::Unprofitable};
    };
    settle(bid_c, cell_idx);
    settle(bid_w, wifi_idx);

    const ProviderPair sps{wifi_idx ? links[*wifi_idx].profile : kAbsentWifi,
                           cell_idx ? links[*cell_idx].profile : kAbsentCellular};

    const Bid* w = bid_of(bid_w);
    const Bid* c = bid_of(bid_c);
    NeClass label;
    if (model.is_pt() || !w || !c) {
        label = pt_class(bid_w, bid_c, user, model);
    } else if (w->rate == c->rate && w->price == c->price && w->guarantee == c->guarantee) {
        label = eut_symmetric_class(*w, user);
    } else {
        label = eut_asymmetric_class(*w, *c, user);
    }

    GameOutcome out;
    if (label == NeClass::Mixed0110) {
        const auto branch = (rng() >> 63) ? MixedBranch::Cellular : MixedBranch::Wifi;
        out = realize_mixed(bid_w, bid_c, branch, user, model, sps);
    } else {
        // enumeration is authoritative on exact ties
        const Strategy s = best_response(bid_c, bid_w, user, model).strategy;
        out = realize(class_of(s), s, bid_w, bid_c, user, model, sps);
    }
    if (bid_of(out.bid_w)) out.wifi_sp = links[*wifi_idx].id;
    if (bid_of(out.bid_c)) out.cellular_sp = links[*cell_idx].id;
    return out;
}

GameOutcome solve_game(const UserProfile& user, std::span<const ProviderLink> links, const DecisionModel& model,
                       bool expansion_enabled, std::mt19937_64& rng) {
    const auto offers = make_offers(links, user.b_min);
    return play_game(user, links, offers, model, expansion_enabled, rng);
}

}  // namespace hetnet
