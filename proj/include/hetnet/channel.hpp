#pragma once

#include <span>

#include "hetnet/types.hpp"

namespace hetnet {

struct LinkState {
    double path_loss_db = 0.0;
    double mean_snr = 0.0;   // linear
    bool covered = false;
    double bw_max = 0.0;     // MHz
    double b_max = 0.0;      // Mbps
};

struct RadioEnv {
    double noise_density_dbm_hz = -174.0;
    double noise_figure_db = 9.0;
    double ue_height_m = 1.5;
    double min_distance_m = 10.0;  // Hata is not defined near the mast
};

struct CoverageFlags {
    bool active = false;
    bool covered = false;
};

// Urban Hata, COST-231 extension above 1500 MHz. Valid for 150..2500 MHz.
double hata_path_loss(double freq_mhz, double d_km, double h_bs_m, double h_ue_m);

double noise_power_dbm(const RadioEnv& env, double bw_mhz);
double path_loss_db(const UserProfile& user, const SpProfile& sp, const RadioEnv& env);

// Coverage is judged on the SNR over the whole usable band g_ba * bw_total.
bool in_coverage(const UserProfile& user, const SpProfile& sp, const RadioEnv& env);

double allocate_bw(const SpProfile& sp, std::span<const CoverageFlags> users);

// mean_snr is evaluated over the per-user budget bw_max.
LinkState link_state(const UserProfile& user, const SpProfile& sp, const RadioEnv& env, double bw_max);

double max_rate(double bw, double mean_snr);

double service_guarantee(double rate, double bw, const LinkState& link);
double guarantee_inverse_bw(double rate, double target, const LinkState& link);

}  // namespace hetnet
