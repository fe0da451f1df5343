#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace hetnet {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(Point a, Point b);

struct UserProfile {
    double delta = 1.0;   // payoff coefficient
    double theta = 2.0;   // concavity exponent, > 1
    double b_min = 1.0;   // Mbps
    Point position{};
    bool active = true;
};

enum class SpKind { WiFi, Cellular };

struct SpProfile {
    SpKind kind = SpKind::Cellular;
    double alpha = 1.0;       // price = alpha * rate^beta
    double beta = 1.2;
    double cost_rate = 0.1;
    double cost_bw = 0.1;
    double bw_total = 20.0;   // MHz
    double tx_power_dbm = 43.0;
    double g_ba = 0.9;
    Point position{};
    double frequency_mhz = 900.0;
    double antenna_height_m = 30.0;
    double coverage_snr_threshold_db = 0.0;
    std::optional<double> coverage_radius_m;
};

struct Bid {
    double rate = 0.0;       // Mbps
    double price = 0.0;
    double bandwidth = 0.0;  // MHz
    double guarantee = 0.0;  // P(actual rate >= rate)
};

enum class NoBidReason { Uncovered, Infeasible, Unprofitable, ExpansionInfeasible, BudgetExhausted, Silent };

struct NoBid {
    NoBidReason reason = NoBidReason::Silent;
};

using Offer = std::variant<NoBid, Bid>;

inline const Bid* bid_of(const Offer& offer) { return std::get_if<Bid>(&offer); }
const Bid* bid_of(const Offer&& offer) = delete;  // would dangle

struct Strategy {
    bool cellular = false;
    bool wifi = false;
    friend bool operator==(Strategy, Strategy) = default;
};

enum class NeClass { Reject00, WifiOnly01, CellOnly10, Both11, Mixed0110, Infeasible };

struct GameOutcome {
    NeClass ne_class = NeClass::Reject00;
    Strategy strategy_draw{};
    double u_user = 0.0;
    double u_sp_w = 0.0;
    double u_sp_c = 0.0;
    Offer bid_w = NoBid{};
    Offer bid_c = NoBid{};
    std::optional<int> wifi_sp;      // provider id of the WiFi bid in force
    std::optional<int> cellular_sp;
};

// Precondition failures on domain types.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A requested operating point that no finite resource can reach.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void validate(const UserProfile& user);
void validate(const SpProfile& sp);
void validate(const Bid& bid);

std::string_view to_string(SpKind kind);
std::string_view to_string(NoBidReason reason);
std::string_view to_string(NeClass ne_class);
NeClass ne_class_from_string(std::string_view text);

// Class label of a pure strategy.
NeClass class_of(Strategy s);

}  // namespace hetnet
