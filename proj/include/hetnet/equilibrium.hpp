#pragma once

#include <random>
#include <span>

#include "hetnet/channel.hpp"
#include "hetnet/prospect.hpp"
#include "hetnet/types.hpp"

namespace hetnet {

enum class MixedBranch { Wifi, Cellular };

struct ProviderPair {
    const SpProfile& wifi;
    const SpProfile& cellular;
};

struct NeThresholds {
    double single_benefit = 0.0;   // benefit of one marginal bid
    double doubling_gap = 0.0;     // extra benefit of a second one
    double price_w = 0.0;
    double price_c = 0.0;
    double perceived_joint_rate = 0.0;
    double perceived_joint_benefit = 0.0;
};

NeThresholds thresholds(const Offer& bid_w, const Offer& bid_c, const UserProfile& user,
                        const DecisionModel& model);

NeClass eut_symmetric_class(const Bid& bid, const UserProfile& user);
NeClass eut_asymmetric_class(const Bid& bid_w, const Bid& bid_c, const UserProfile& user);
NeClass pt_class(const Offer& bid_w, const Offer& bid_c, const UserProfile& user, const DecisionModel& model);

GameOutcome classify_eut_symmetric(const Bid& bid, const UserProfile& user, ProviderPair sps,
                                   MixedBranch branch = MixedBranch::Wifi);
GameOutcome classify_eut_asymmetric(const Bid& bid_w, const Bid& bid_c, const UserProfile& user,
                                    ProviderPair sps);
GameOutcome classify_pt(const Offer& bid_w, const Offer& bid_c, const UserProfile& user,
                        const DecisionModel& model, ProviderPair sps);

struct ProviderLink {
    int id = 0;
    SpProfile profile;
    LinkState link;
    std::optional<double> expansion_budget;  // defaults to link.bw_max
};

// One optimize_bid per link.
std::vector<Offer> make_offers(std::span<const ProviderLink> links, double b_min);

// Game on precomputed offers (parallel to links).
GameOutcome play_game(const UserProfile& user, std::span<const ProviderLink> links,
                      std::span<const Offer> offers, const DecisionModel& model, bool expansion_enabled,
                      std::mt19937_64& rng);

GameOutcome solve_game(const UserProfile& user, std::span<const ProviderLink> links,
                       const DecisionModel& model, bool expansion_enabled, std::mt19937_64& rng);

}  // namespace hetnet
