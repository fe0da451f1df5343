#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "hetnet/prospect.hpp"
#include "hetnet/types.hpp"

namespace hetnet {

// Tie-break order: fewer acceptances first, WiFi-only before cellular-only.
inline constexpr std::array<Strategy, 4> kStrategyOrder{
    Strategy{false, false}, Strategy{false, true}, Strategy{true, false}, Strategy{true, true}};

// Relative slack on the minimum-rate constraint.
inline constexpr double kRateTolerance = 1e-9;

struct WifiOffer {
    int sp_id = 0;
    Bid bid;
};

struct Response {
    Strategy strategy{};
    double utility = 0.0;
};

double perceived_rate(const Bid& bid, const DecisionModel& model);

std::optional<int> select_wifi_sp(std::span<const WifiOffer> offers, const UserProfile& user,
                                  const DecisionModel& model);

bool is_feasible(Strategy s, const Offer& bid_c, const Offer& bid_w, const UserProfile& user,
                 const DecisionModel& model);

std::vector<Strategy> feasible_set(const Offer& bid_c, const Offer& bid_w, const UserProfile& user,
                                   const DecisionModel& model);

Response best_response(const Offer& bid_c, const Offer& bid_w, const UserProfile& user,
                       const DecisionModel& model);

}  // namespace hetnet
