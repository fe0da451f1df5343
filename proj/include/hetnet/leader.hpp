#pragma once

#include <optional>

#include "hetnet/channel.hpp"
#include "hetnet/prospect.hpp"
#include "hetnet/types.hpp"

namespace hetnet {

inline constexpr int kBidGridPoints = 1024;
inline constexpr double kBidTolerance = 1e-9;

// Smallest bandwidth with rate * guarantee == b_min.
double marginal_bw(double rate, double b_min, const LinkState& link);

// SP profit of an accepted marginal bid at this rate.
double bid_profit(double rate, const SpProfile& sp, const LinkState& link, double b_min);

Offer optimize_bid(const SpProfile& sp, const LinkState& link, double b_min);

// Bandwidth expansion for a weighting user. budget defaults to link.bw_max.
Offer expand_bw_pt(const Bid& bid, const DecisionModel& model, const LinkState& link,
                   std::optional<double> budget = std::nullopt);

bool participation_check(const Bid& bid, double acceptance_prob, const SpProfile& sp);

}  // namespace hetnet
