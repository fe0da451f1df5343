#pragma once

#include "hetnet/types.hpp"

namespace hetnet {

// delta * b^(1/theta)
double user_benefit(double b_joint, const UserProfile& user);

// H(2m) - H(m), the extra benefit of a second bid of perceived rate m.
double doubling_gap(double m, const UserProfile& user);

// Accepting a NoBid slot throws DomainError.
double user_utility(Strategy s, const Offer& bid_c, const Offer& bid_w, const UserProfile& user,
                    double perceived_gc, double perceived_gw);

double sp_price(double rate, const SpProfile& sp);
double sp_cost(double rate, double bw, const SpProfile& sp);
double sp_utility(bool accepted, const Offer& offer, const SpProfile& sp);

}  // namespace hetnet
