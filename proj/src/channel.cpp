#include "hetnet/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hetnet {

double hata_path_loss(double freq_mhz, double d_km, double h_bs_m, double h_ue_m) {
    if (!(d_km > 0.0)) throw DomainError("path loss distance must be positive");
    if (!(freq_mhz >= 150.0 && freq_mhz <= 2500.0)) throw DomainError("frequency outside 150..2500 MHz");
    if (!(h_bs_m > 0.0 && h_ue_m > 0.0)) throw DomainError("antenna heights must be positive");
    const double lf = std::log10(freq_mhz);
    const double lh = std::log10(h_bs_m);
    // small/medium city mobile antenna correction
    const double a_hm = (1.1 * lf - 0.7) * h_ue_m - (1.56 * lf - 0.8);
    const double base = freq_mhz <= 1500.0 ? 69.55 + 26.16 * lf : 46.3 + 33.9 * lf;
    return base - 13.82 * lh - a_hm + (44.9 - 6.55 * lh) * std::log10(d_km);
}

double noise_power_dbm(const RadioEnv& env, double bw_mhz) {
    return env.noise_density_dbm_hz + 10.0 * std::log10(bw_mhz * 1e6) + env.noise_figure_db;
}

double path_loss_db(const UserProfile& user, const SpProfile& sp, const RadioEnv& env) {
    const double d_m = std::max(distance(user.position, sp.position), env.min_distance_m);
    return hata_path_loss(sp.frequency_mhz, d_m / 1000.0, sp.antenna_height_m, env.ue_height_m);
}

namespace {

double snr_linear(const SpProfile& sp, const RadioEnv& env, double loss_db, double bw_mhz) {
    return std::pow(10.0, (sp.tx_power_dbm - loss_db - noise_power_dbm(env, bw_mhz)) / 10.0);
}

double threshold_linear(const SpProfile& sp) { return std::pow(10.0, sp.coverage_snr_threshold_db / 10.0); }

bool coverage_given_loss(const UserProfile& user, const SpProfile& sp, const RadioEnv& env, double loss_db) {
    if (!user.active) return false;
    if (sp.coverage_radius_m && distance(user.position, sp.position) > *sp.coverage_radius_m) return false;
    return snr_linear(sp, env, loss_db, sp.g_ba * sp.bw_total) >= threshold_linear(sp);
}

}  // namespace

bool in_coverage(const UserProfile& user, const SpProfile& sp, const RadioEnv& env) {
    return coverage_given_loss(user, sp, env, path_loss_db(user, sp, env));
}

double allocate_bw(const SpProfile& sp, std::span<const CoverageFlags> users) {
    const auto served = std::count_if(users.begin(), users.end(),
                                      [](const CoverageFlags& f) { return f.active && f.covered; });
    const double usable = sp.g_ba * sp.bw_total;
    return served == 0 ? usable : usable / static_cast<double>(served);
}

LinkState link_state(const UserProfile& user, const SpProfile& sp, const RadioEnv& env, double bw_max) {
    LinkState link;
    link.path_loss_db = path_loss_db(user, sp, env);
    if (!(bw_max > 0.0)) return link;
    link.mean_snr = snr_linear(sp, env, link.path_loss_db, bw_max);
    link.covered = coverage_given_loss(user, sp, env, link.path_loss_db) && link.mean_snr >= threshold_linear(sp);
    if (link.covered) {
        link.bw_max = bw_max;
        link.b_max = max_rate(bw_max, link.mean_snr);
    }
    return link;
}

double max_rate(double bw, double mean_snr) { return bw * std::log2(1.0 + mean_snr); }

double service_guarantee(double rate, double bw, const LinkState& link) {
    if (rate < 0.0 || bw < 0.0) throw DomainError("rate and bandwidth must be nonnegative");
    if (rate == 0.0) return 1.0;
    if (bw == 0.0 || link.mean_snr <= 0.0) return 0.0;
    return std::exp(-std::expm1(rate / bw * std::numbers::ln2) / link.mean_snr);
}

double guarantee_inverse_bw(double rate, double target, const LinkState& link) {
    if (!(rate > 0.0)) throw DomainError("rate must be positive");
    if (!(target > 0.0)) throw DomainError("target guarantee must be positive");
    if (target >= 1.0) throw InfeasibleError("guarantee of 1 needs unbounded bandwidth");
    if (!(link.mean_snr > 0.0)) throw InfeasibleError("link has no signal");
    return rate * std::numbers::ln2 / std::log1p(-link.mean_snr * std::log(target));
}

}  // namespace hetnet
