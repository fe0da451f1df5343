#include "hetnet/types.hpp"

#include <cmath>
#include <string>

namespace hetnet {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

}  // namespace

void validate(const UserProfile& user) {
    require(user.delta > 0.0, "user delta must be positive");
    require(user.theta > 1.0, "user theta must exceed 1");
    require(user.b_min > 0.0, "user b_min must be positive");
}

void validate(const SpProfile& sp) {
    require(sp.alpha > 0.0, "provider alpha must be positive");
    require(sp.beta > 1.0, "provider beta must exceed 1");
    require(sp.cost_rate > 0.0 && sp.cost_bw > 0.0, "provider cost coefficients must be positive");
    require(sp.g_ba > 0.0 && sp.g_ba <= 1.0, "provider g_ba must lie in (0,1]");
    require(sp.bw_total > 0.0, "provider bw_total must be positive");
    require(!sp.coverage_radius_m || *sp.coverage_radius_m > 0.0, "coverage radius must be positive");
}

void validate(const Bid& bid) {
    require(bid.rate >= 0.0 && bid.price >= 0.0 && bid.bandwidth >= 0.0, "bid fields must be nonnegative");
    require(bid.guarantee >= 0.0 && bid.guarantee <= 1.0, "bid guarantee must lie in [0,1]");
}

std::string_view to_string(SpKind kind) { return kind == SpKind::WiFi ? "wifi" : "cellular"; }

std::string_view to_string(NoBidReason reason) {
    switch (reason) {
        case NoBidReason::Uncovered: return "uncovered";
        case NoBidReason::Infeasible: return "infeasible";
        case NoBidReason::Unprofitable: return "unprofitable";
        case NoBidReason::ExpansionInfeasible: return "expansion_infeasible";
        case NoBidReason::BudgetExhausted: return "budget_exhausted";
        case NoBidReason::Silent: return "silent";
    }
    return "unknown";
}

std::string_view to_string(NeClass c) {
    switch (c) {
        case NeClass::Reject00: return "Reject00";
        case NeClass::WifiOnly01: return "WifiOnly01";
        case NeClass::CellOnly10: return "CellOnly10";
        case NeClass::Both11: return "Both11";
        case NeClass::Mixed0110: return "Mixed0110";
        case NeClass::Infeasible: return "Infeasible";
    }
    return "unknown";
}

NeClass ne_class_from_string(std::string_view text) {
    for (auto c : {NeClass::Reject00, NeClass::WifiOnly01, NeClass::CellOnly10, NeClass::Both11,
                   NeClass::Mixed0110, NeClass::Infeasible}) {
        if (to_string(c) == text) return c;
    }
    throw DomainError("unknown NE class: " + std::string(text));
}

NeClass class_of(Strategy s) {
    if (s.cellular && s.wifi) return NeClass::Both11;
    if (s.cellular) return NeClass::CellOnly10;
    if (s.wifi) return NeClass::WifiOnly01;
    return NeClass::Reject00;
}

}  // namespace hetnet
