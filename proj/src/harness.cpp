#include "hetnet/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hetnet/follower.hpp"

namespace hetnet {

using nlohmann::json;

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::EUT: return "EUT";
        case Scenario::PT: return "PT";
        case Scenario::PT_EXPANSION: return "PT_EXPANSION";
    }
    return "unknown";
}

Scenario scenario_from_string(std::string_view text) {
    for (auto s : {Scenario::EUT, Scenario::PT, Scenario::PT_EXPANSION})
        if (to_string(s) == text) return s;
    throw DomainError("unknown scenario: " + std::string(text));
}

ScenarioConfig default_config() {
    ScenarioConfig cfg;
    cfg.cellular = SpProfile{.kind = SpKind::Cellular,
                             .alpha = 0.44,
                             .beta = 1.2,
                             .cost_rate = 0.1,
                             .cost_bw = 0.2,
                             .bw_total = 100.0,
                             .tx_power_dbm = 43.0,
                             .g_ba = 0.9,
                             .position = {},
                             .frequency_mhz = 900.0,
                             .antenna_height_m = 30.0,
                             .coverage_snr_threshold_db = 0.0,
                             .coverage_radius_m = std::nullopt};
    cfg.wifi = SpProfile{.kind = SpKind::WiFi,
                         .alpha = 0.35,
                         .beta = 1.2,
                         .cost_rate = 0.1,
                         .cost_bw = 0.2,
                         .bw_total = 20.0,
                         .tx_power_dbm = 23.0,
                         .g_ba = 0.9,
                         .position = {},
                         .frequency_mhz = 2400.0,
                         .antenna_height_m = 6.0,
                         .coverage_snr_threshold_db = 0.0,
                         .coverage_radius_m = 91.44};  // 300 ft
    cfg.user = UserProfile{.delta = 5.0, .theta = 2.0, .b_min = 2.0};
    return cfg;
}

void validate(const ScenarioConfig& cfg) {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw DomainError(what);
    };
    require(cfg.n_users >= 1, "n_users must be at least 1");
    require(cfg.n_wifi >= 0, "n_wifi must be nonnegative");
    require(cfg.area_side_m > 0.0, "area_side_m must be positive");
    require(cfg.trials >= 1, "trials must be at least 1");
    require(!cfg.sweep.empty(), "sweep must not be empty");
    for (int n : cfg.sweep) require(n >= 1, "sweep values must be positive");
    require(cfg.activity_prob >= 0.0 && cfg.activity_prob <= 1.0, "activity_prob must lie in [0,1]");
    (void)DecisionModel::prospect(cfg.prelec_alpha);
    validate(cfg.cellular);
    validate(cfg.wifi);
    validate(cfg.user);
}

namespace {

template <class T>
void read(const json& obj, const char* key, T& field) {
    if (auto it = obj.find(key); it != obj.end()) field = it->get<T>();
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> keys, std::string_view where) {
    if (!obj.is_object()) throw DomainError(std::string(where) + " must be an object");
    for (const auto& [k, v] : obj.items()) {
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            throw DomainError("unknown config key " + std::string(where) + "." + k);
    }
}

void read_provider(const json& obj, SpProfile& sp, std::string_view where) {
    reject_unknown(obj,
                   {"alpha", "beta", "cost_rate", "cost_bw", "bw_total_mhz", "tx_power_dbm", "g_ba", "frequency_mhz",
                    "antenna_height_m", "coverage_snr_threshold_db", "coverage_radius_m"},
                   where);
    read(obj, "alpha", sp.alpha);
    read(obj, "beta", sp.beta);
    read(obj, "cost_rate", sp.cost_rate);
    read(obj, "cost_bw", sp.cost_bw);
    read(obj, "bw_total_mhz", sp.bw_total);
    read(obj, "tx_power_dbm", sp.tx_power_dbm);
    read(obj, "g_ba", sp.g_ba);
    read(obj, "frequency_mhz", sp.frequency_mhz);
    read(obj, "antenna_height_m", sp.antenna_height_m);
    read(obj, "coverage_snr_threshold_db", sp.coverage_snr_threshold_db);
    if (auto it = obj.find("coverage_radius_m"); it != obj.end()) {
        sp.coverage_radius_m = it->is_null() ? std::nullopt : std::optional<double>(it->get<double>());
    }
}

}  // namespace

ScenarioConfig parse_config(std::string_view json_text) {
    ScenarioConfig cfg = default_config();
    json root;
    try {
        root = json::parse(json_text);
        reject_unknown(root,
                       {"n_users", "n_wifi", "area_side_m", "ring_fraction", "seed", "sweep", "trials", "prelec_alpha",
                        "expansion_enabled", "activity_prob", "radio", "cellular", "wifi", "user"},
                       "config");
        read(root, "n_users", cfg.n_users);
        read(root, "n_wifi", cfg.n_wifi);
        read(root, "area_side_m", cfg.area_side_m);
        read(root, "ring_fraction", cfg.ring_fraction);
        read(root, "seed", cfg.seed);
        read(root, "sweep", cfg.sweep);
        read(root, "trials", cfg.trials);
        read(root, "prelec_alpha", cfg.prelec_alpha);
        read(root, "expansion_enabled", cfg.expansion_enabled);
        read(root, "activity_prob", cfg.activity_prob);
        if (auto it = root.find("radio"); it != root.end()) {
            reject_unknown(*it, {"noise_density_dbm_hz", "noise_figure_db", "ue_height_m", "min_distance_m"}, "radio");
            read(*it, "noise_density_dbm_hz", cfg.radio.noise_density_dbm_hz);
            read(*it, "noise_figure_db", cfg.radio.noise_figure_db);
            read(*it, "ue_height_m", cfg.radio.ue_height_m);
            read(*it, "min_distance_m", cfg.radio.min_distance_m);
        }
        if (auto it = root.find("cellular"); it != root.end()) read_provider(*it, cfg.cellular, "cellular");
        if (auto it = root.find("wifi"); it != root.end()) read_provider(*it, cfg.wifi, "wifi");
        if (auto it = root.find("user"); it != root.end()) {
            reject_unknown(*it, {"delta", "theta", "b_min_mbps"}, "user");
            read(*it, "delta", cfg.user.delta);
            read(*it, "theta", cfg.user.theta);
            read(*it, "b_min_mbps", cfg.user.b_min);
        }
    } catch (const json::exception& e) {
        throw DomainError(std::string("bad config: ") + e.what());
    }
    cfg.cellular.kind = SpKind::Cellular;
    cfg.wifi.kind = SpKind::WiFi;
    validate(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const DomainError& e) {
        throw DomainError(path.string() + ": " + e.what());
    }
}

namespace {

// Uniform on [0,1) from the top 53 bits; independent of the standard library.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Topology generate_topology(const ScenarioConfig& cfg, int n_users, std::mt19937_64& rng) {
    Topology topo;
    const Point centre{cfg.area_side_m / 2.0, cfg.area_side_m / 2.0};
    SpProfile cell = cfg.cellular;
    cell.position = centre;
    topo.providers.push_back(cell);
    const double ring = cfg.ring_fraction * cfg.area_side_m;
    for (int k = 0; k < cfg.n_wifi; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / cfg.n_wifi;
        SpProfile ap = cfg.wifi;
        ap.position = {centre.x + ring * std::cos(angle), centre.y + ring * std::sin(angle)};
        topo.providers.push_back(ap);
    }
    topo.users.reserve(n_users);
    for (int j = 0; j < n_users; ++j) {
        UserProfile u = cfg.user;
        u.position.x = uniform01(rng) * cfg.area_side_m;
        u.position.y = uniform01(rng) * cfg.area_side_m;
        u.active = uniform01(rng) < cfg.activity_prob;
        topo.users.push_back(u);
    }
    return topo;
}

std::vector<std::vector<ProviderLink>> build_links(const Topology& topo, const RadioEnv& env) {
    const std::size_t n = topo.users.size();
    std::vector<std::vector<ProviderLink>> links(n);
    std::vector<CoverageFlags> flags(n);
    for (std::size_t i = 0; i < topo.providers.size(); ++i) {
        const SpProfile& sp = topo.providers[i];
        for (std::size_t j = 0; j < n; ++j)
            flags[j] = {topo.users[j].active, in_coverage(topo.users[j], sp, env)};
        const double budget = allocate_bw(sp, flags);
        for (std::size_t j = 0; j < n; ++j) {
            if (!flags[j].covered) continue;
            const LinkState link = link_state(topo.users[j], sp, env, budget);
            if (link.covered) links[j].push_back({static_cast<int>(i), sp, link, std::nullopt});
        }
    }
    return links;
}

namespace {

struct Usage {
    int sp = -1;
    double bw = 0.0;
};

std::array<Usage, 2> accepted_usage(const GameOutcome& o) {
    std::array<Usage, 2> u{};
    if (const Bid* w = bid_of(o.bid_w); w && o.strategy_draw.wifi) u[0] = {*o.wifi_sp, w->bandwidth};
    if (const Bid* c = bid_of(o.bid_c); c && o.strategy_draw.cellular) u[1] = {*o.cellular_sp, c->bandwidth};
    return u;
}

bool wants_expansion(const GameOutcome& o) {
    for (const Offer* offer : {&o.bid_w, &o.bid_c})
        if (const Bid* b = bid_of(*offer); b && b->guarantee > kInvE) return true;
    return false;
}

}  // namespace

std::vector<GameOutcome> play_trial(const ScenarioConfig& cfg, const Topology& topo,
                                    const std::vector<std::vector<ProviderLink>>& links,
                                    const std::vector<std::vector<Offer>>& offers, Scenario scenario,
                                    std::mt19937_64& rng) {
    const auto model = scenario == Scenario::EUT ? DecisionModel::eut() : DecisionModel::prospect(cfg.prelec_alpha);
    const std::size_t n = topo.users.size();
    std::vector<GameOutcome> outcomes(n);
    for (std::size_t j = 0; j < n; ++j) outcomes[j] = play_game(topo.users[j], links[j], offers[j], model, false, rng);
    if (scenario != Scenario::PT_EXPANSION) return outcomes;

    // Expansions draw on bandwidth that associated users leave unused.
    std::vector<double> slack(topo.providers.size());
    for (std::size_t i = 0; i < slack.size(); ++i) slack[i] = topo.providers[i].g_ba * topo.providers[i].bw_total;
    for (const auto& o : outcomes)
        for (const Usage& u : accepted_usage(o))
            if (u.sp >= 0) slack[u.sp] -= u.bw;

    for (std::size_t j = 0; j < n; ++j) {
        if (!wants_expansion(outcomes[j])) continue;
        const auto before = accepted_usage(outcomes[j]);
        std::vector<ProviderLink> local = links[j];
        for (auto& l : local) {
            double own = 0.0;
            for (const Usage& u : before)
                if (u.sp == l.id) own += u.bw;
            l.expansion_budget = std::max(0.0, slack[l.id] + own);
        }
        outcomes[j] = play_game(topo.users[j], local, offers[j], model, true, rng);
        for (const Usage& u : before)
            if (u.sp >= 0) slack[u.sp] += u.bw;
        for (const Usage& u : accepted_usage(outcomes[j]))
            if (u.sp >= 0) slack[u.sp] -= u.bw;
    }
    return outcomes;
}

TrialTotals summarize(const Topology& topo, const std::vector<GameOutcome>& outcomes) {
    TrialTotals t;
    std::vector<double> used(topo.providers.size(), 0.0);
    for (const auto& o : outcomes) {
        t.sum_sp_utility += o.u_sp_w + o.u_sp_c;
        t.sum_user_utility += o.u_user;
        for (const Offer* offer : {&o.bid_w, &o.bid_c}) {
            if (const Bid* b = bid_of(*offer)) {
                t.bw_in_force += b->bandwidth;
                t.max_guarantee = std::max(t.max_guarantee, b->guarantee);
            }
        }
        if (o.strategy_draw.wifi || o.strategy_draw.cellular) ++t.associated;
        for (const Usage& u : accepted_usage(o))
            if (u.sp >= 0) used[u.sp] += u.bw;
    }
    t.max_overuse = -INFINITY;
    for (std::size_t i = 0; i < used.size(); ++i) {
        const double pool = topo.providers[i].g_ba * topo.providers[i].bw_total;
        t.max_overuse = std::max(t.max_overuse, used[i] - pool);
    }
    return t;
}

std::mt19937_64 trial_rng(std::uint64_t seed, int n, int trial, int stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(trial),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

namespace {

struct Moments {
    std::vector<double> values;
    double mean() const {
        double s = 0.0;
        for (double v : values) s += v;
        return s / static_cast<double>(values.size());
    }
    double std_error() const {
        if (values.size() < 2) return 0.0;
        const double m = mean();
        double ss = 0.0;
        for (double v : values) ss += (v - m) * (v - m);
        const double k = static_cast<double>(values.size());
        return std::sqrt(ss / (k - 1.0) / k);
    }
};

struct PointAccumulator {
    Moments sp, user, bw, assoc;
    double max_guarantee = 0.0;
    double max_overuse = -INFINITY;
};

}  // namespace

SweepReport run_sweep_detailed(const ScenarioConfig& cfg) {
    validate(cfg);
    std::vector<Scenario> scenarios{Scenario::EUT, Scenario::PT};
    if (cfg.expansion_enabled) scenarios.push_back(Scenario::PT_EXPANSION);

    SweepReport report;
    for (int n : cfg.sweep) {
        std::vector<PointAccumulator> acc(scenarios.size());
        for (int t = 0; t < cfg.trials; ++t) {
            auto rng = trial_rng(cfg.seed, n, t, 0);
            const Topology topo = generate_topology(cfg, n, rng);
            const auto links = build_links(topo, cfg.radio);
            std::vector<std::vector<Offer>> offers(links.size());
            for (std::size_t j = 0; j < links.size(); ++j) offers[j] = make_offers(links[j], topo.users[j].b_min);
            for (std::size_t s = 0; s < scenarios.size(); ++s) {
                auto draw = trial_rng(cfg.seed, n, t, 1 + static_cast<int>(scenarios[s]));
                const auto outcomes = play_trial(cfg, topo, links, offers, scenarios[s], draw);
                const TrialTotals tot = summarize(topo, outcomes);
                auto& a = acc[s];
                a.sp.values.push_back(tot.sum_sp_utility);
                a.user.values.push_back(tot.sum_user_utility);
                a.bw.values.push_back(tot.bw_in_force / n);
                a.assoc.values.push_back(static_cast<double>(tot.associated) / n);
                a.max_guarantee = std::max(a.max_guarantee, tot.max_guarantee);
                a.max_overuse = std::max(a.max_overuse, tot.max_overuse);
            }
        }
        for (std::size_t s = 0; s < scenarios.size(); ++s) {
            const auto& a = acc[s];
            report.rows.push_back(SweepRow{n, scenarios[s], a.sp.mean(), a.user.mean(), a.bw.mean(), a.assoc.mean(),
                                           cfg.trials, a.sp.std_error(), a.user.std_error()});
            report.diagnostics.push_back({n, scenarios[s], a.max_guarantee, a.max_overuse});
        }
    }
    return report;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg) { return run_sweep_detailed(cfg).rows; }

namespace {

std::string number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

double parse_double(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw DomainError("bad number: " + std::string(s));
    return v;
}

int parse_int(std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw DomainError("bad integer: " + std::string(s));
    return v;
}

json row_json(const SweepRow& r) {
    return json{{"n", r.n},
                {"scenario", std::string(to_string(r.scenario))},
                {"sum_sp_utility", r.sum_sp_utility},
                {"sum_user_utility", r.sum_user_utility},
                {"avg_bw_per_user", r.avg_bw_per_user},
                {"association_rate", r.association_rate},
                {"trials", r.trials},
                {"stderr_sp", r.stderr_sp},
                {"stderr_user", r.stderr_user}};
}

}  // namespace

std::string format_rows(const std::vector<SweepRow>& rows, OutputFormat format) {
    if (format == OutputFormat::Json) {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(row_json(r));
        return arr.dump(2) + "\n";
    }
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += std::to_string(r.n) + ',' + std::string(to_string(r.scenario)) + ',' + number(r.sum_sp_utility) + ',' +
               number(r.sum_user_utility) + ',' + number(r.avg_bw_per_user) + ',' + number(r.association_rate) + ',' +
               std::to_string(r.trials) + ',' + number(r.stderr_sp) + ',' + number(r.stderr_user) + '\n';
    }
    return out;
}

void emit(const std::vector<SweepRow>& rows, OutputFormat format, const std::filesystem::path& path) {
    if (rows.empty()) throw DomainError("no rows to write");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << format_rows(rows, format);
    if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
}

std::vector<SweepRow> parse_rows(std::string_view text, OutputFormat format) {
    std::vector<SweepRow> rows;
    if (format == OutputFormat::Json) {
        try {
            for (const auto& o : json::parse(text)) {
                rows.push_back(SweepRow{o.at("n").get<int>(), scenario_from_string(o.at("scenario").get<std::string>()),
                                        o.at("sum_sp_utility").get<double>(), o.at("sum_user_utility").get<double>(),
                                        o.at("avg_bw_per_user").get<double>(), o.at("association_rate").get<double>(),
                                        o.at("trials").get<int>(), o.at("stderr_sp").get<double>(),
                                        o.at("stderr_user").get<double>()});
            }
        } catch (const json::exception& e) {
            throw DomainError(std::string("bad sweep json: ") + e.what());
        }
        return rows;
    }
    std::size_t pos = 0;
    auto next_line = [&]() -> std::optional<std::string_view> {
        if (pos >= text.size()) return std::nullopt;
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        return line;
    };
    if (next_line() != std::optional<std::string_view>(kCsvHeader)) throw DomainError("unexpected CSV header");
    while (auto line = next_line()) {
        if (line->empty()) continue;
        std::vector<std::string_view> f;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line->find(',', start);
            f.push_back(line->substr(start, comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (f.size() != 9) throw DomainError("CSV row needs 9 fields");
        rows.push_back(SweepRow{parse_int(f[0]), scenario_from_string(f[1]), parse_double(f[2]), parse_double(f[3]),
                                parse_double(f[4]), parse_double(f[5]), parse_int(f[6]), parse_double(f[7]),
                                parse_double(f[8])});
    }
    return rows;
}

}  // namespace hetnet
