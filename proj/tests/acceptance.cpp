// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hetnet/equilibrium.hpp"
#include "hetnet/follower.hpp"
#include "hetnet/harness.hpp"
#include "hetnet/leader.hpp"
#include "hetnet/model.hpp"
#include "oracles.hpp"

using namespace hetnet;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, double limit_s, const std::function<Verdict()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) {
        v.pass = false;
        v.detail += " [over time limit " + std::to_string(limit_s) + " s]";
    }
    if (!v.pass) ++failures;
    std::printf("criterion %d: %s  %s  (%.2f s)\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

LinkState make_link(double snr, double bw_max) {
    LinkState l;
    l.mean_snr = snr;
    l.covered = true;
    l.bw_max = bw_max;
    l.b_max = max_rate(bw_max, snr);
    return l;
}

SpProfile random_provider(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0, 1);
    SpProfile sp;
    sp.alpha = 0.2 + u01(rng);
    sp.beta = 1.05 + u01(rng);
    sp.cost_rate = 0.02 + 0.3 * u01(rng);
    sp.cost_bw = 0.02 + 0.5 * u01(rng);
    return sp;
}

Verdict theorem_one_equality() {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u01(0, 1);
    int bids = 0, eq_bad = 0, shrink_bad = 0, grow_bad = 0;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const SpProfile sp = random_provider(rng);
        const double b_min = 0.5 + 2 * u01(rng);
        const LinkState link = make_link(std::pow(10.0, 3 * u01(rng)), 0.2 + 5 * u01(rng));
        const Offer bid_offer = optimize_bid(sp, link, b_min);
        const Bid* bid = bid_of(bid_offer);
        if (!bid) continue;
        ++bids;
        const double err = std::abs(bid->rate * service_guarantee(bid->rate, bid->bandwidth, link) - b_min);
        worst = std::max(worst, err / b_min);
        if (err > 1e-6 * b_min) ++eq_bad;
        if (bid->rate * service_guarantee(bid->rate, 0.99 * bid->bandwidth, link) >= b_min) ++shrink_bad;
        const double at = bid->price - sp_cost(bid->rate, bid->bandwidth, sp);
        const double wider = bid->price - sp_cost(bid->rate, 1.01 * bid->bandwidth, sp);
        if (!(wider < at)) ++grow_bad;
    }
    return {bids > 0 && eq_bad == 0 && shrink_bad == 0 && grow_bad == 0,
            std::to_string(bids) + " bids from 1000 draws; worst relative gap " + fmt("%.2e", worst) +
                "; -1% bandwidth kept the minimum rate " + std::to_string(shrink_bad) + " times; +1% did not cost " +
                std::to_string(grow_bad) + " times"};
}

// weight_inverse returns a double; near 0 and 1 the exact preimage can fall
// between adjacent doubles. There the check is that no double does better.
inline bool resolvable(double p, const hetnet::DecisionModel& m, double tol) {
    if (p <= std::numeric_limits<double>::min() || p >= 1.0) return false;
    return hetnet::weight(std::nextafter(p, 1.0), m) - hetnet::weight(std::nextafter(p, 0.0), m) <= tol;
}

inline bool best_double(double p, double q, const hetnet::DecisionModel& m) {
    const double slack = 4 * std::numeric_limits<double>::epsilon() * q;
    return hetnet::weight(std::nextafter(p, 0.0), m) - slack <= q && q <= hetnet::weight(std::nextafter(p, 1.0), m) + slack;
}

Verdict prelec_suite() {
    double fixed = 0.0, round_trip = 0.0;
    int order_bad = 0, unresolved = 0, not_best = 0;
    for (int k = 1; k <= 9; ++k) {
        const auto m = DecisionModel::prospect(k / 10.0);
        fixed = std::max(fixed, std::abs(weight(kInvE, m) - kInvE));
        for (int i = 1; i <= 1000; ++i) {
            const double hi = kInvE + (1 - kInvE) * i / 1001.0;
            const double lo = kInvE * i / 1001.0;
            if (!(weight(hi, m) < hi)) ++order_bad;
            if (!(weight(lo, m) > lo)) ++order_bad;
            for (double q : {hi, lo}) {
                const double p = weight_inverse(q, m);
                if (!resolvable(p, m, 1e-12)) {
                    ++unresolved;
                    if (!best_double(p, q, m)) ++not_best;
                    continue;
                }
                round_trip = std::max(round_trip, std::abs(weight(p, m) - q));
            }
        }
    }
    return {fixed <= 1e-12 && round_trip <= 1e-12 && order_bad == 0 && not_best == 0,
            "fixed-point error " + fmt("%.1e", fixed) + ", round-trip error " + fmt("%.1e", round_trip) + " over " +
                std::to_string(18000 - unresolved) + " grid points; " + std::to_string(unresolved) +
                " points where doubles cannot resolve 1e-12, of which " + std::to_string(not_best) +
                " are not the nearest double; " +
                std::to_string(order_bad) + " ordering violations"};
}

Verdict guarantee_oracle() {
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> u01(0, 1);
    int triples = 0, outside = 0;
    double worst_z = 0.0;
    while (triples < 50) {
        const double b = 0.2 + 10 * u01(rng);
        const double bw = 0.1 + 5 * u01(rng);
        const double snr = std::pow(10.0, 3 * u01(rng));
        LinkState link;
        link.mean_snr = snr;
        const double p = service_guarantee(b, bw, link);
        if (p < 0.01 || p > 0.99) continue;  // 3 sigma is meaningless at the edges
        ++triples;
        const double mc = oracle::monte_carlo_guarantee(b, bw, snr, 100'000, rng);
        const double z = std::abs(mc - p) / std::sqrt(p * (1 - p) / 1e5);
        worst_z = std::max(worst_z, z);
        if (z > 3.0) ++outside;
    }
    return {outside == 0, "50 triples, largest deviation " + fmt("%.2f", worst_z) + " sigma"};
}

Verdict follower_oracle() {
    std::mt19937_64 rng(107);
    std::uniform_real_distribution<double> u01(0, 1);
    int mismatch[2] = {0, 0};
    for (int m = 0; m < 2; ++m) {
        const double alpha = m == 0 ? 0.0 : 0.7;
        const auto model = m == 0 ? DecisionModel::eut() : DecisionModel::prospect(0.7);
        for (int i = 0; i < 10000; ++i) {
            const UserProfile u{0.2 + 6 * u01(rng), 1.05 + 3 * u01(rng), 0.5 + 3 * u01(rng)};
            auto draw = [&]() -> std::pair<Offer, std::optional<oracle::Bid>> {
                if (u01(rng) < 0.15) return {NoBid{}, std::nullopt};
                const double rate = u.b_min * (1 + 3 * u01(rng));
                const double g = u01(rng) < 0.5 ? u.b_min / rate : u01(rng);
                const double price = 4 * u01(rng);
                return {Bid{rate, price, 1.0, g}, oracle::Bid{rate, price, g}};
            };
            const auto [c, oc] = draw();
            const auto [w, ow] = draw();
            const auto got = best_response(c, w, u, model);
            const auto want = oracle::enumerate(oc, ow, u.delta, u.theta, u.b_min, alpha);
            if (got.strategy != Strategy{want.p_c == 1, want.p_w == 1} || std::abs(got.utility - want.utility) > 1e-12)
                ++mismatch[m];
        }
    }
    return {mismatch[0] == 0 && mismatch[1] == 0,
            "mismatches: EUT " + std::to_string(mismatch[0]) + ", PT " + std::to_string(mismatch[1]) + " of 10000 each"};
}

Verdict pt_infeasibility() {
    std::mt19937_64 rng(109);
    std::uniform_real_distribution<double> u01(0, 1);
    const auto pt = DecisionModel::prospect(0.7);
    int singles = 0;
    for (int i = 0; i < 10000; ++i) {
        const UserProfile u{0.2 + 20 * u01(rng), 1.05 + 3 * u01(rng), 0.5 + 3 * u01(rng)};
        SpProfile sw = random_provider(rng), sc = random_provider(rng);
        auto marginal = [&](const SpProfile& sp) {
            const double g = kInvE + (1 - kInvE) * (0.001 + 0.998 * u01(rng));
            const double rate = u.b_min / g;
            LinkState link = make_link(std::pow(10.0, 3 * u01(rng)), 1e9);
            return Bid{rate, sp_price(rate, sp), marginal_bw(rate, u.b_min, link), u.b_min / rate};
        };
        const Bid w = marginal(sw), c = marginal(sc);
        for (Strategy s : feasible_set(c, w, u, pt))
            if (s.cellular != s.wifi) ++singles;
    }
    return {singles == 0, std::to_string(singles) + " single-acceptance strategies feasible in 10000 instances"};
}

Verdict expansion_round_trip() {
    std::mt19937_64 rng(113);
    std::uniform_real_distribution<double> u01(0, 1);
    const auto pt = DecisionModel::prospect(0.7);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double b_min = 0.5 + 2 * u01(rng);
        const double g = kInvE + (1 - kInvE) * (0.001 + 0.998 * u01(rng));
        const double rate = b_min / g;
        const LinkState link = make_link(std::pow(10.0, 3 * u01(rng)), 1e9);
        const Bid eut{rate, 1.0, marginal_bw(rate, b_min, link), g};
        const Offer x_offer = expand_bw_pt(eut, pt, link);
        const Bid* x = bid_of(x_offer);
        if (!x) return {false, "expansion refused with an unlimited budget"};
        const double restored = weight(service_guarantee(rate, x->bandwidth, link), pt);
        worst = std::max(worst, std::abs(restored - service_guarantee(rate, eut.bandwidth, link)));
    }
    const double lambda = weight_inverse(0.8, pt);
    const double ref = oracle::bisect_prelec_inverse(0.8, 0.7);
    const bool ok = worst <= 1e-6 && std::abs(lambda - 0.8892) <= 1e-3 && std::abs(lambda - ref) <= 1e-9;
    return {ok, "worst round-trip error " + fmt("%.1e", worst) + "; target for 0.8 is " + fmt("%.6f", lambda) +
                    " (bisection " + fmt("%.6f", ref) + ")"};
}

Verdict leader_grid() {
    std::mt19937_64 rng(127);
    std::uniform_real_distribution<double> u01(0, 1);
    int bad = 0, bids = 0;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const SpProfile sp = random_provider(rng);
        const double b_min = 0.5 + 2 * u01(rng);
        const LinkState link = make_link(std::pow(10.0, 3 * u01(rng)), 0.2 + 5 * u01(rng));
        const auto ref = oracle::grid_leader(sp.alpha, sp.beta, sp.cost_rate, sp.cost_bw, link.mean_snr, b_min,
                                             link.b_max, link.bw_max, 1'000'000);
        const Offer bid_offer = optimize_bid(sp, link, b_min);
        const Bid* bid = bid_of(bid_offer);
        if (!bid) {
            if (ref.found && ref.profit >= 0.0) ++bad;
            continue;
        }
        ++bids;
        const double mine = bid->price - sp_cost(bid->rate, bid->bandwidth, sp);
        if (!ref.found) continue;  // the optimum lies between grid points
        const double gap = (ref.profit - mine) / std::max(std::abs(ref.profit), 1e-300);
        worst = std::max(worst, gap);
        if (gap > 1e-6) ++bad;
    }
    return {bad == 0, std::to_string(bids) + " bids over 100 draws; worst shortfall against the fine grid " +
                          fmt("%.2e", worst) + " relative; " + std::to_string(bad) + " failures"};
}

Verdict qualitative_shape() {
    const ScenarioConfig cfg = load_config(HETNET_DEFAULT_CONFIG);
    const SweepReport rep = run_sweep_detailed(cfg);
    const std::size_t points = cfg.sweep.size();
    if (rep.rows.size() != 3 * points || points < 3) return {false, "unexpected sweep shape"};
    auto row = [&](std::size_t i, Scenario s) { return rep.rows[3 * i + static_cast<std::size_t>(s)]; };
    auto diag = [&](std::size_t i, Scenario s) { return rep.diagnostics[3 * i + static_cast<std::size_t>(s)]; };

    // (a) leading points where weighting helps providers and every guarantee is below 1/e
    std::size_t prefix = 0;
    while (prefix < points) {
        const bool helps = row(prefix, Scenario::PT).sum_sp_utility >= row(prefix, Scenario::EUT).sum_sp_utility;
        bool low = true;
        for (auto s : {Scenario::EUT, Scenario::PT, Scenario::PT_EXPANSION})
            low = low && diag(prefix, s).max_guarantee < kInvE;
        if (!(helps && low)) break;
        ++prefix;
    }
    const bool a = prefix >= 1;

    // (b) from some load on, plain weighting loses >= 20 points and expansion stays within 10
    std::optional<std::size_t> onset;
    for (std::size_t i = points; i-- > 0;) {
        const double e = row(i, Scenario::EUT).association_rate;
        const double p = row(i, Scenario::PT).association_rate;
        const double x = row(i, Scenario::PT_EXPANSION).association_rate;
        if (e - p >= 0.20 && std::abs(e - x) <= 0.10) onset = i;
        else break;
    }
    const bool b = onset.has_value() && *onset < points - 1;

    // (c) extra bandwidth per user
    std::vector<double> extra(points);
    for (std::size_t i = 0; i < points; ++i)
        extra[i] = row(i, Scenario::PT_EXPANSION).avg_bw_per_user - row(i, Scenario::EUT).avg_bw_per_user;
    bool zero = true;
    for (std::size_t i = 0; i < prefix; ++i) zero = zero && std::abs(extra[i]) <= 1e-12;
    const double x1 = extra[points - 3], x2 = extra[points - 2], x3 = extra[points - 1];
    const bool c = a && zero && x1 > 0.0 && x2 > x1 && x3 > x2;

    double overuse = -INFINITY;
    for (const auto& d : rep.diagnostics) overuse = std::max(overuse, d.max_overuse);

    std::string detail = "(a) " + std::string(a ? "ok" : "FAIL") + ": low-load prefix up to N=" +
                         (prefix ? std::to_string(cfg.sweep[prefix - 1]) : std::string("none")) + "; (b) " +
                         (b ? "ok" : "FAIL") + ": holds from N=" +
                         (onset ? std::to_string(cfg.sweep[*onset]) : std::string("none")) + "; (c) " +
                         (c ? "ok" : "FAIL") + ": extra bandwidth " + fmt("%.5f, %.5f, %.5f", x1, x2, x3) +
                         " at the last three loads, " + (zero ? "zero" : "nonzero") + " in the prefix";
    detail += "; bandwidth conservation slack " + fmt("%.1e", -overuse);
    return {a && b && c && overuse <= 1e-9, detail};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Verdict determinism() {
    const auto dir = std::filesystem::temp_directory_path() / "hetnet_acceptance";
    std::filesystem::create_directories(dir);
    const auto cfg_path = dir / "config.json";
    {
        std::ofstream out(cfg_path);
        out << R"({"sweep": [50, 250, 500], "trials": 3, "seed": 77})";
    }
    std::string outputs[2];
    for (int k = 0; k < 2; ++k) {
        const auto out = dir / ("run" + std::to_string(k) + ".csv");
        const std::string cmd = std::string("\"") + HETNET_CLI + "\" simulate --config \"" + cfg_path.string() +
                                "\" --out \"" + out.string() + "\" --format csv";
        if (std::system(cmd.c_str()) != 0) return {false, "simulate exited nonzero"};
        outputs[k] = slurp(out);
    }
    std::filesystem::remove_all(dir);
    const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
    return {same, same ? std::to_string(outputs[0].size()) + " identical bytes" : "outputs differ"};
}

}  // namespace

int main() {
    report(1, 5, theorem_one_equality);
    report(2, 1, prelec_suite);
    report(3, 10, guarantee_oracle);
    report(4, 0, follower_oracle);
    report(5, 0, pt_infeasibility);
    report(6, 0, expansion_round_trip);
    report(7, 60, leader_grid);
    report(8, 300, qualitative_shape);
    report(9, 0, determinism);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
