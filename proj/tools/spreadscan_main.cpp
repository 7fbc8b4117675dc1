// Command-line front end: synthesize datasets, analyze them for the
// signature of a hidden spreader node, sweep ROC curves, estimate parameters.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spreadscan/discriminate.hpp"
#include "spreadscan/estimate.hpp"
#include "spreadscan/evaluate.hpp"
#include "spreadscan/ingest.hpp"
#include "spreadscan/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spreadscan;

namespace {

constexpr const char* kVersion = "0.1.0";

[[noreturn]] void config_error(const std::string& msg) {
    std::cerr << "config error: " << msg << "\n";
    std::exit(2);
}

// JSON config with flag overrides; flags win. Unknown keys are rejected.
void apply_config(CLI::App& cmd, const std::string& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot open config file " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const std::exception& e) {
        config_error(std::string("bad JSON: ") + e.what());
    }
    for (auto& [key, value] : cfg.items()) {
        CLI::Option* opt = cmd.get_option_no_throw("--" + key);
        if (!opt) config_error("unknown config key '" + key + "'");
        if (opt->count() > 0) continue;  // flag wins
        std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        opt->add_result(text);
        opt->run_callback();
    }
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void write_manifest(const fs::path& dir, const json& config) {
    json manifest;
    manifest["tool"] = "spreadscan";
    manifest["version"] = kVersion;
    manifest["config"] = config;
    manifest["config_hash"] = fnv1a(config.dump());
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << "\n";
}

struct ParamArgs {
    double alpha = 0.067, beta = 0.033, gamma = 0.1;
    double r = 0.0;            // when set, overrides alpha/beta via rate_sum
    double rate_sum = 0.1;     // alpha + beta used with --r

    TransmissionParams resolve() const {
        if (r > 0.0) return {rate_sum * r / (1.0 + r), rate_sum / (1.0 + r)};
        return {alpha, beta};
    }
};

void add_param_options(CLI::App* cmd, ParamArgs& p) {
    cmd->add_option("--alpha", p.alpha, "Infection probability per unit time");
    cmd->add_option("--beta", p.beta, "Recovery probability per unit time");
    cmd->add_option("--gamma", p.gamma, "Outgoing mobility fraction per unit time");
    cmd->add_option("--r", p.r, "Reproductive ratio; sets alpha,beta with alpha+beta=rate-sum");
    cmd->add_option("--rate-sum", p.rate_sum, "alpha+beta used together with --r");
}

SpreaderKind parse_scenario(const std::string& name) {
    if (name == "absent") return SpreaderKind::absent;
    if (name == "index") return SpreaderKind::index;
    if (name == "intermediate") return SpreaderKind::intermediate;
    config_error("scenario must be absent, index, or intermediate");
}

int run_synth(const json& config, int n, double mean_degree, const ParamArgs& params,
              const std::string& scenario_name, int d, double delta_t, int substeps,
              std::uint64_t seed, double initial_infected, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const SpreaderKind kind = parse_scenario(scenario_name);
    const bool present = kind != SpreaderKind::absent;
    const int n_total = n + (present ? 1 : 0);

    const Network full_net = generate_er(n_total, mean_degree, seed);
    const Network observed = present ? full_net.head_subnetwork(n) : full_net;

    Scenario scenario;
    scenario.spreader_kind = kind;
    scenario.observed_nodes = n;
    scenario.initial_infected_node = 0;
    scenario.initial_infected_count = initial_infected;
    if (present)
        scenario.hidden_node_links = full_net.adjacency.row(n).head(n).transpose();

    const TransmissionParams tp = params.resolve();
    SynthesisResult synth =
        synthesize_dataset(observed, tp, params.gamma, scenario, d, delta_t, substeps, seed);

    {
        std::ofstream out(fs::path(out_dir) / "dataset.csv");
        write_dataset_csv(out, synth.i_series);
    }
    {
        std::ofstream out(fs::path(out_dir) / "dataset_deltaJ.csv");
        write_dataset_csv(out, synth.deltaJ_series);
    }
    {
        json meta;
        meta["alpha"] = tp.alpha;
        meta["beta"] = tp.beta;
        meta["gamma"] = params.gamma;
        meta["scenario"] = scenario_name;
        meta["seed"] = seed;
        meta["delta_t"] = delta_t;
        meta["substeps"] = substeps;
        meta["ground_truth"] = synth.i_series.ground_truth;
        meta["observed_network"] = json::parse(observed.to_json());
        meta["clamped_components"] = synth.clamped_components;
        std::ofstream out(fs::path(out_dir) / "meta.json");
        out << meta.dump(2) << "\n";
    }
    write_manifest(out_dir, config);
    std::cout << "wrote " << out_dir << "/dataset.csv (" << d << " observations, " << n
              << " nodes)\n";
    return 0;
}

int run_analyze(const json& config, const std::string& data_path, const std::string& format,
                const std::string& kind_name, const ParamArgs& params,
                const std::string& adjacency_path, bool estimate, int window, double l_star,
                double t_star, double delta_t, std::uint64_t seed, int restarts,
                const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::vector<std::string> labels;
    Dataset dataset;

    if (format == "cumulative") {
        RegionSeries series = parse_timeseries_file(data_path);
        labels = series.labels;
        if (window > 1) series = smooth_moving_average(series, window);
        std::vector<std::string> flags;
        dataset = to_deltaJ(series, &flags);
        dataset.delta_t = delta_t;
        for (const auto& f : series.flags) std::cerr << "note: " << f << "\n";
        for (const auto& f : flags) std::cerr << "note: " << f << "\n";
    } else if (format == "synthetic") {
        std::ifstream in(data_path);
        if (!in) {
            std::cerr << "cannot open " << data_path << "\n";
            return 1;
        }
        const DatasetKind kind =
            kind_name == "deltaJ" ? DatasetKind::deltaJ_series : DatasetKind::i_series;
        dataset = read_dataset_csv(in, kind, delta_t);
    } else {
        config_error("format must be synthetic or cumulative");
    }

    const int n = static_cast<int>(dataset.values.cols());
    TransmissionParams tp = params.resolve();
    Mobility mobility;
    Dataset i_series = dataset;

    if (estimate) {
        EstimateConfig cfg;
        cfg.restarts = restarts;
        EstimatedParams est = estimate_parameters(dataset, cfg, seed);
        std::cout << "estimated alpha=" << est.alpha_hat << " beta=" << est.beta_hat
                  << " (r=" << est.alpha_hat / est.beta_hat << ") gamma=" << est.gamma_hat
                  << (est.converged ? "" : " [not converged]") << "\n";
        tp = est.params();
        if (est.gamma_identifiable)
            mobility = gamma_from_topology(Network::from_adjacency(est.adjacency_hat),
                                           est.gamma_hat);
        else
            mobility.gamma_matrix = Eigen::MatrixXd::Zero(n, n);
        if (dataset.kind == DatasetKind::deltaJ_series)
            i_series = convert_deltaJ_to_I(dataset, est.alpha_hat);
        std::ofstream out(fs::path(out_dir) / "estimate.json");
        out << est.to_json() << "\n";
    } else {
        if (adjacency_path.empty())
            config_error("analyze needs --adjacency with the known topology, or --estimate");
        std::ifstream in(adjacency_path);
        if (!in) {
            std::cerr << "cannot open " << adjacency_path << "\n";
            return 1;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        // Accepts a bare network document or a synth meta.json wrapping one.
        json doc = json::parse(ss.str());
        if (doc.contains("observed_network")) doc = doc["observed_network"];
        mobility = gamma_from_topology(Network::from_json(doc.dump()), params.gamma);
        if (dataset.kind == DatasetKind::deltaJ_series)
            i_series = convert_deltaJ_to_I(dataset, tp.alpha);
    }

    ZScoreSeries zs;
    try {
        zs = zscore_series(i_series, tp, mobility);
    } catch (const std::exception& e) {
        std::cerr << "analysis failed: " << e.what() << "\n";
        return 1;
    }

    std::vector<NodeStatistics> stats;
    for (int i = 0; i < n; ++i) {
        NodeStatistics st;
        st.node = i;
        if (i < static_cast<int>(labels.size())) st.label = labels[i];
        const auto samples = zs.node_samples(i);
        if (samples.empty()) {
            std::cerr << "node " << i << ": no usable z samples, skipped\n";
            continue;
        }
        st.ks_stat = ks_statistic(samples);
        st.chauvenet_stat = chauvenet_statistic(samples);
        st.z_moments = pooled_moments(samples);
        stats.push_back(st);
    }

    const std::vector<NodeVerdict> verdicts = classify(stats, {t_star, l_star});
    {
        std::ofstream out(fs::path(out_dir) / "report.csv");
        write_verdict_csv(out, verdicts);
    }
    {
        std::ofstream out(fs::path(out_dir) / "zscores.csv");
        write_zscore_csv(out, zs, i_series.delta_t, labels);
    }
    write_manifest(out_dir, config);

    std::cout << "node        L        T   flagged(tail)\n";
    for (const auto& v : verdicts)
        std::cout << (v.label.empty() ? "node_" + std::to_string(v.node) : v.label) << "  "
                  << v.chauvenet_stat << "  " << v.ks_stat << "  "
                  << (v.classified_neighbor_tail ? "yes" : "no") << "\n";
    return 0;
}

int run_roc(const json& config, int n, double mean_degree, const ParamArgs& params,
            const std::string& scenario_name, int d, double delta_t, int substeps,
            std::uint64_t seed, double initial_infected, int n_trials, bool estimate,
            int restarts, const std::string& kind_name, const std::string& out_dir) {
    fs::create_directories(out_dir);
    TrialCondition cond;
    cond.n_nodes = n;
    cond.mean_degree = mean_degree;
    const TransmissionParams tp = params.resolve();
    cond.alpha = tp.alpha;
    cond.beta = tp.beta;
    cond.gamma = params.gamma;
    cond.spreader = parse_scenario(scenario_name);
    cond.initial_infected = initial_infected;
    cond.n_obs = d;
    cond.delta_t = delta_t;
    cond.substeps = substeps;
    cond.n_trials = n_trials;
    cond.base_seed = seed;
    cond.estimate_theta = estimate;
    cond.est.restarts = restarts;
    cond.data_kind = kind_name == "deltaJ" ? DatasetKind::deltaJ_series : DatasetKind::i_series;

    const TrialBatch batch = run_trial_batch(cond);

    json thresholds;
    for (auto which : {Discriminator::tail, Discriminator::mid}) {
        const bool tail = which == Discriminator::tail;
        RocCurve curve;
        try {
            curve = roc_sweep(batch, which, default_grid(which));
        } catch (const std::exception& e) {
            std::cerr << "roc failed: " << e.what() << "\n";
            return 1;
        }
        const std::string stem = tail ? "roc_tail" : "roc_mid";
        {
            std::ofstream out(fs::path(out_dir) / (stem + ".csv"));
            write_roc_csv(out, curve);
        }
        {
            std::ofstream out(fs::path(out_dir) / (stem + ".svg"));
            write_roc_svg(out, curve, tail ? "tail-end discriminator" : "mid-body discriminator");
        }
        thresholds[tail ? "l_star" : "t_star"] = curve.best_threshold;
        thresholds[tail ? "tail_best_gap" : "mid_best_gap"] = curve.best_gap;
        std::cout << (tail ? "tail" : "mid") << ": best gap " << curve.best_gap
                  << " at threshold " << curve.best_threshold << "\n";
    }
    thresholds["excluded_trials"] = batch.excluded_count;
    {
        std::ofstream out(fs::path(out_dir) / "thresholds.json");
        out << thresholds.dump(2) << "\n";
    }
    {
        std::ofstream out(fs::path(out_dir) / "zscore_moments.csv");
        out << "grouping,m,v,s,kappa\n";
        for (auto [name, grouping] :
             std::initializer_list<std::pair<const char*, NodeGrouping>>{
                 {"all", NodeGrouping::all},
                 {"neighbor", NodeGrouping::neighbor},
                 {"non_neighbor", NodeGrouping::non_neighbor}}) {
            try {
                const ZMoments zm = measure_zscore_moments(batch, grouping);
                out << name << "," << zm.mean << "," << zm.variance << "," << zm.skewness << ","
                    << zm.kurtosis << "\n";
            } catch (const std::exception&) {
                // grouping empty (e.g. neighbors of an absent spreader)
            }
        }
    }
    write_manifest(out_dir, config);
    return 0;
}

int run_estimate(const json& config, const std::string& data_path, const std::string& kind_name,
                 double delta_t, std::uint64_t seed, int restarts, const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::ifstream in(data_path);
    if (!in) {
        std::cerr << "cannot open " << data_path << "\n";
        return 1;
    }
    const DatasetKind kind =
        kind_name == "deltaJ" ? DatasetKind::deltaJ_series : DatasetKind::i_series;
    const Dataset dataset = read_dataset_csv(in, kind, delta_t);
    EstimateConfig cfg;
    cfg.restarts = restarts;
    const EstimatedParams est = estimate_parameters(dataset, cfg, seed);
    {
        std::ofstream out(fs::path(out_dir) / "estimate.json");
        out << est.to_json() << "\n";
    }
    write_manifest(out_dir, config);
    std::cout << "alpha=" << est.alpha_hat << " beta=" << est.beta_hat
              << " gamma=" << est.gamma_hat << " logL=" << est.log_likelihood
              << (est.converged ? "" : " [not converged]") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hidden-spreader node discovery for meta-population epidemics"};
    app.require_subcommand(1);

    std::string config_path;
    json config_echo;

    // synth
    auto* synth = app.add_subcommand("synth", "Synthesize a stochastic epidemic dataset");
    int n = 10, d = 100, substeps = 10;
    double mean_degree = 2.0, delta_t = 1.0, initial_infected = 200.0;
    std::uint64_t seed = 1;
    std::string scenario = "index", out_dir = "out";
    ParamArgs params;
    synth->add_option("--config", config_path, "JSON config file; flags override");
    synth->add_option("--n", n, "Observed node count");
    synth->add_option("--mean-degree", mean_degree, "Erdos-Renyi mean degree");
    add_param_options(synth, params);
    synth->add_option("--scenario", scenario, "absent | index | intermediate");
    synth->add_option("--d", d, "Number of observations");
    synth->add_option("--delta-t", delta_t, "Observation interval");
    synth->add_option("--substeps", substeps, "Integrator substeps per interval");
    synth->add_option("--seed", seed, "Random seed");
    synth->add_option("--initial-infected", initial_infected, "Initial infected count");
    synth->add_option("-o,--out", out_dir, "Output directory");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Score nodes of a dataset");
    std::string data_path, format = "synthetic", kind = "I", adjacency_path;
    bool estimate = false;
    int window = 1, restarts = 10;
    double l_star = -3.5, t_star = 1.75;
    analyze->add_option("--config", config_path, "JSON config file; flags override");
    analyze->add_option("--data", data_path, "Dataset CSV")->required();
    analyze->add_option("--format", format, "synthetic | cumulative");
    analyze->add_option("--kind", kind, "I | deltaJ (synthetic format)");
    add_param_options(analyze, params);
    analyze->add_option("--adjacency", adjacency_path, "Known topology JSON (given-theta mode)");
    analyze->add_flag("--estimate", estimate, "Estimate parameters and topology");
    analyze->add_option("--window", window, "Moving-average window for cumulative input");
    analyze->add_option("--l-star", l_star, "Tail-end threshold");
    analyze->add_option("--t-star", t_star, "Mid-body threshold");
    analyze->add_option("--delta-t", delta_t, "Observation interval");
    analyze->add_option("--seed", seed, "Random seed for estimation");
    analyze->add_option("--restarts", restarts, "Estimation restarts");
    analyze->add_option("-o,--out", out_dir, "Output directory");

    // roc
    auto* roc = app.add_subcommand("roc", "ROC evaluation over randomized trials");
    int n_trials = 100;
    roc->add_option("--config", config_path, "JSON config file; flags override");
    roc->add_option("--n", n, "Observed node count");
    roc->add_option("--mean-degree", mean_degree, "Erdos-Renyi mean degree");
    add_param_options(roc, params);
    roc->add_option("--scenario", scenario, "absent | index | intermediate");
    roc->add_option("--d", d, "Number of observations");
    roc->add_option("--delta-t", delta_t, "Observation interval");
    roc->add_option("--substeps", substeps, "Integrator substeps per interval");
    roc->add_option("--seed", seed, "Base random seed");
    roc->add_option("--initial-infected", initial_infected, "Initial infected count");
    roc->add_option("--n-trials", n_trials, "Number of random topologies");
    roc->add_flag("--estimate", estimate, "Estimate theta per trial");
    roc->add_option("--restarts", restarts, "Estimation restarts");
    roc->add_option("--kind", kind, "I | deltaJ dataset pathway");
    roc->add_option("-o,--out", out_dir, "Output directory");

    // estimate
    auto* est_cmd = app.add_subcommand("estimate", "Estimate parameters from a dataset");
    est_cmd->add_option("--config", config_path, "JSON config file; flags override");
    est_cmd->add_option("--data", data_path, "Dataset CSV")->required();
    est_cmd->add_option("--kind", kind, "I | deltaJ");
    est_cmd->add_option("--delta-t", delta_t, "Observation interval");
    est_cmd->add_option("--seed", seed, "Random seed");
    est_cmd->add_option("--restarts", restarts, "Estimation restarts");
    est_cmd->add_option("-o,--out", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    CLI::App* active = app.get_subcommands().front();
    if (!config_path.empty()) {
        apply_config(*active, config_path);
        try {
            // Re-run validation on injected values.
            config_echo = json::parse(std::ifstream(config_path), nullptr, true);
        } catch (...) {
        }
    }
    for (const auto* opt : active->get_options())
        if (opt->count() > 0 && opt->get_name() != "--config")
            config_echo[opt->get_name().substr(2)] =
                opt->results().size() == 1 ? json(opt->results().front())
                                           : json(opt->results());

    try {
        if (active == synth)
            return run_synth(config_echo, n, mean_degree, params, scenario, d, delta_t, substeps,
                             seed, initial_infected, out_dir);
        if (active == analyze)
            return run_analyze(config_echo, data_path, format, kind, params, adjacency_path,
                               estimate, window, l_star, t_star, delta_t, seed, restarts, out_dir);
        if (active == roc)
            return run_roc(config_echo, n, mean_degree, params, scenario, d, delta_t, substeps,
                           seed, initial_infected, n_trials, estimate, restarts, kind, out_dir);
        if (active == est_cmd)
            return run_estimate(config_echo, data_path, kind, delta_t, seed, restarts, out_dir);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
