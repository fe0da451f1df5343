#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hetnet/channel.hpp"
#include "hetnet/equilibrium.hpp"
#include "hetnet/prospect.hpp"
#include "hetnet/types.hpp"

namespace hetnet {

enum class Scenario { EUT, PT, PT_EXPANSION };

std::string_view to_string(Scenario s);
Scenario scenario_from_string(std::string_view text);

struct ScenarioConfig {
    int n_users = 100;
    int n_wifi = 8;
    double area_side_m = 600.0;
    double ring_fraction = 0.3;   // AP ring radius over area side
    std::uint64_t seed = 20240611;
    std::vector<int> sweep{50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
    int trials = 20;
    double prelec_alpha = 0.7;
    bool expansion_enabled = true;
    double activity_prob = 1.0;
    RadioEnv radio{};
    SpProfile cellular{};
    SpProfile wifi{};
    UserProfile user{};
};

ScenarioConfig default_config();
void validate(const ScenarioConfig& cfg);
ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(std::string_view json_text);

struct Topology {
    std::vector<SpProfile> providers;  // id 0 is the cellular BS
    std::vector<UserProfile> users;
};

Topology generate_topology(const ScenarioConfig& cfg, int n_users, std::mt19937_64& rng);

// Per-user candidate links, covering providers only.
std::vector<std::vector<ProviderLink>> build_links(const Topology& topo, const RadioEnv& env);

struct TrialTotals {
    double sum_sp_utility = 0.0;
    double sum_user_utility = 0.0;
    double bw_in_force = 0.0;       // bandwidth of all bids in force
    int associated = 0;
    double max_guarantee = 0.0;     // over bids in force
    double max_overuse = 0.0;       // worst accepted bandwidth minus pool over providers
};

// Plays every user's game. PT_EXPANSION draws expansions from each provider's
// bandwidth left unused by associated users.
std::vector<GameOutcome> play_trial(const ScenarioConfig& cfg, const Topology& topo,
                                    const std::vector<std::vector<ProviderLink>>& links,
                                    const std::vector<std::vector<Offer>>& offers, Scenario scenario,
                                    std::mt19937_64& rng);

TrialTotals summarize(const Topology& topo, const std::vector<GameOutcome>& outcomes);

std::mt19937_64 trial_rng(std::uint64_t seed, int n, int trial, int stream);

struct SweepRow {
    int n = 0;
    Scenario scenario = Scenario::EUT;
    double sum_sp_utility = 0.0;
    double sum_user_utility = 0.0;
    double avg_bw_per_user = 0.0;
    double association_rate = 0.0;
    int trials = 0;
    double stderr_sp = 0.0;
    double stderr_user = 0.0;
    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct PointDiagnostics {
    int n = 0;
    Scenario scenario = Scenario::EUT;
    double max_guarantee = 0.0;
    double max_overuse = 0.0;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::vector<PointDiagnostics> diagnostics;
};

SweepReport run_sweep_detailed(const ScenarioConfig& cfg);
std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg);

enum class OutputFormat { Csv, Json };

inline constexpr std::string_view kCsvHeader =
    "n,scenario,sum_sp_utility,sum_user_utility,avg_bw_per_user,association_rate,trials,stderr_sp,stderr_user";

std::string format_rows(const std::vector<SweepRow>& rows, OutputFormat format);
void emit(const std::vector<SweepRow>& rows, OutputFormat format, const std::filesystem::path& path);
std::vector<SweepRow> parse_rows(std::string_view text, OutputFormat format);

}  // namespace hetnet
