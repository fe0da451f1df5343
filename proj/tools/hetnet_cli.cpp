#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hetnet/equilibrium.hpp"
#include "hetnet/harness.hpp"
#include "hetnet/leader.hpp"

using nlohmann::json;
using namespace hetnet;

namespace {

json offer_json(const Offer& offer) {
    if (const Bid* b = bid_of(offer))
        return {{"rate", b->rate}, {"price", b->price}, {"bandwidth", b->bandwidth}, {"guarantee", b->guarantee}};
    return {{"no_bid", std::string(to_string(std::get<NoBid>(offer).reason))}};
}

json outcome_json(const GameOutcome& o) {
    json j{{"ne_class", std::string(to_string(o.ne_class))},
           {"strategy", {{"p_c", o.strategy_draw.cellular ? 1 : 0}, {"p_w", o.strategy_draw.wifi ? 1 : 0}}},
           {"u_user", o.u_user},
           {"u_sp_w", o.u_sp_w},
           {"u_sp_c", o.u_sp_c},
           {"bid_w", offer_json(o.bid_w)},
           {"bid_c", offer_json(o.bid_c)}};
    j["wifi_sp"] = o.wifi_sp ? json(*o.wifi_sp) : json(nullptr);
    j["cellular_sp"] = o.cellular_sp ? json(*o.cellular_sp) : json(nullptr);
    return j;
}

Offer offer_from(const json& params, const char* key) {
    auto it = params.find(key);
    if (it == params.end() || it->is_null()) return NoBid{NoBidReason::Silent};
    Bid b{it->at("rate").get<double>(), it->at("price").get<double>(), it->value("bandwidth", 0.0),
          it->at("guarantee").get<double>()};
    validate(b);
    return b;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ScenarioConfig config_with_seed(const std::string& path, const std::optional<std::uint64_t>& seed) {
    ScenarioConfig cfg = load_config(path);
    if (seed) cfg.seed = *seed;
    return cfg;
}

int simulate(const std::string& config, const std::string& out, const std::string& format,
             const std::optional<std::uint64_t>& seed) {
    const ScenarioConfig cfg = config_with_seed(config, seed);
    emit(run_sweep(cfg), format == "json" ? OutputFormat::Json : OutputFormat::Csv, out);
    return 0;
}

int game(const std::string& config, int user_index, const std::string& model, bool expand,
         const std::optional<std::uint64_t>& seed) {
    const ScenarioConfig cfg = config_with_seed(config, seed);
    if (user_index < 0 || user_index >= cfg.n_users)
        throw DomainError("user index " + std::to_string(user_index) + " outside 0.." + std::to_string(cfg.n_users - 1));
    if (expand && model != "pt") throw DomainError("--expand requires --model pt");
    const Scenario scenario = model == "eut" ? Scenario::EUT : (expand ? Scenario::PT_EXPANSION : Scenario::PT);

    auto rng = trial_rng(cfg.seed, cfg.n_users, 0, 0);
    const Topology topo = generate_topology(cfg, cfg.n_users, rng);
    const auto links = build_links(topo, cfg.radio);
    std::vector<std::vector<Offer>> offers(links.size());
    for (std::size_t j = 0; j < links.size(); ++j) offers[j] = make_offers(links[j], topo.users[j].b_min);
    auto draw = trial_rng(cfg.seed, cfg.n_users, 0, 1 + static_cast<int>(scenario));
    const auto outcomes = play_trial(cfg, topo, links, offers, scenario, draw);
    std::cout << outcome_json(outcomes[static_cast<std::size_t>(user_index)]).dump(2) << '\n';
    return 0;
}

int ne_classify(const std::string& params_path) {
    const json params = json::parse(read_file(params_path));
    const json& u = params.at("user");
    UserProfile user{u.at("delta").get<double>(), u.at("theta").get<double>(), u.at("b_min").get<double>()};
    validate(user);
    DecisionModel model = DecisionModel::eut();
    if (auto m = params.find("model"); m != params.end() && m->value("kind", "eut") == "pt")
        model = DecisionModel::prospect(m->value("prelec_alpha", 0.7));
    const Offer bid_w = offer_from(params, "wifi_bid");
    const Offer bid_c = offer_from(params, "cellular_bid");
    const Bid* w = bid_of(bid_w);
    const Bid* c = bid_of(bid_c);

    std::string regime;
    NeClass cls;
    if (model.is_pt()) {
        regime = "pt";
        cls = pt_class(bid_w, bid_c, user, model);
    } else if (w && c && w->rate == c->rate && w->price == c->price && w->guarantee == c->guarantee) {
        regime = "eut_symmetric";
        cls = eut_symmetric_class(*w, user);
    } else if (w && c) {
        regime = "eut_asymmetric";
        cls = eut_asymmetric_class(*w, *c, user);
    } else {
        regime = "eut_single";
        cls = pt_class(bid_w, bid_c, user, model);
    }
    const NeThresholds t = thresholds(bid_w, bid_c, user, model);
    json out{{"ne_class", std::string(to_string(cls))},
             {"regime", regime},
             {"thresholds",
              {{"single_benefit", t.single_benefit},
               {"doubling_gap", t.doubling_gap},
               {"price_w", t.price_w},
               {"price_c", t.price_c},
               {"perceived_joint_rate", t.perceived_joint_rate},
               {"perceived_joint_benefit", t.perceived_joint_benefit}}}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

int expand_bw(double rate, double guarantee, double alpha, double mean_snr) {
    const auto model = DecisionModel::prospect(alpha);
    LinkState link;
    link.mean_snr = mean_snr;
    link.covered = true;
    const double bw_eut = guarantee_inverse_bw(rate, guarantee, link);
    const Bid eut{rate, 0.0, bw_eut, guarantee};
    const Offer expanded = expand_bw_pt(eut, model, link, std::numeric_limits<double>::infinity());
    json out{{"lambda", weight_inverse(guarantee, model)}, {"bandwidth_eut", bw_eut}};
    if (const Bid* b = bid_of(expanded)) {
        out["bandwidth"] = b->bandwidth;
        out["advertised_guarantee"] = b->guarantee;
        out["expanded"] = b->bandwidth != bw_eut;
    } else {
        throw InfeasibleError("expansion impossible: " + std::string(to_string(std::get<NoBid>(expanded).reason)));
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HetNet association game solver and load-sweep simulator"};
    app.require_subcommand(1);

    std::string config, out, format = "csv", model, params;
    std::optional<std::uint64_t> seed;
    int user_index = 0;
    bool expand = false;
    double rate = 0, guarantee = 0, alpha = 0.7, snr = 0;

    auto* sim = app.add_subcommand("simulate", "run the load sweep and write per-point aggregates");
    sim->add_option("--config", config, "JSON config file")->required()->check(CLI::ExistingFile);
    sim->add_option("--out", out, "output path")->required();
    sim->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sim->add_option("--seed", seed, "override the config seed");

    auto* g = app.add_subcommand("game", "solve one user's game and print the outcome as JSON");
    g->add_option("--config", config, "JSON config file")->required()->check(CLI::ExistingFile);
    g->add_option("--user-index", user_index, "user index")->required();
    g->add_option("--model", model, "eut or pt")->required()->check(CLI::IsMember({"eut", "pt"}));
    g->add_flag("--expand", expand, "enable bandwidth expansion");
    g->add_option("--seed", seed, "override the config seed");

    auto* ne = app.add_subcommand("ne-classify", "classify the equilibrium for given bids");
    ne->add_option("--params", params, "JSON parameter file")->required()->check(CLI::ExistingFile);

    auto* ex = app.add_subcommand("expand-bw", "bandwidth needed to restore a weighted guarantee");
    ex->add_option("--rate", rate)->required()->check(CLI::PositiveNumber);
    ex->add_option("--guarantee", guarantee)->required()->check(CLI::Range(0.0, 1.0));
    ex->add_option("--alpha", alpha)->required();
    ex->add_option("--mean-snr", snr)->required()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*sim) return simulate(config, out, format, seed);
        if (*g) return game(config, user_index, model, expand, seed);
        if (*ne) return ne_classify(params);
        if (*ex) return expand_bw(rate, guarantee, alpha, snr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
