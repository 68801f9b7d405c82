// gpembed: sample synthetic manifolds, embed point clouds via diffusion maps
// or Gaussian-process sketching, and run distortion experiments.
//
// Exit codes: 0 success, 1 I/O failure, 2 validation error, 3 numerical error.

#include "CLI11.hpp"

#include "gpembed/config.hpp"
#include "gpembed/embed.hpp"
#include "gpembed/error.hpp"
#include "gpembed/harness.hpp"
#include "gpembed/io.hpp"
#include "gpembed/manifolds.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace {

using namespace gpembed;

std::uint64_t env_seed_fallback() {
    const char* env = std::getenv("GPEMBED_SEED");
    if (env == nullptr) return 0;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw ValidationError("GPEMBED_SEED is not a nonnegative integer");
    }
}

std::vector<std::array<double, 2>> parse_outliers(const std::string& text) {
    std::vector<std::array<double, 2>> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(';', start);
        if (end == std::string::npos) end = text.size();
        const std::string point = text.substr(start, end - start);
        const std::size_t comma = point.find(',');
        if (comma == std::string::npos)
            throw ValidationError("outliers: expected 'x,y;x,y;...', got '" + point + "'");
        try {
            out.push_back({std::stod(point.substr(0, comma)), std::stod(point.substr(comma + 1))});
        } catch (const std::exception&) {
            throw ValidationError("outliers: malformed point '" + point + "'");
        }
        start = end + 1;
    }
    return out;
}

struct SampleArgs {
    std::string manifold;
    std::size_t n = 0;
    double r = 0.0, a = 0.0, b = 0.0;
    std::string outliers;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int cmd_sample(const SampleArgs& args) {
    ManifoldSpec spec;
    if (args.manifold == "circle") spec.kind = ManifoldKind::circle;
    else if (args.manifold == "flat_torus") spec.kind = ManifoldKind::flat_torus;
    else if (args.manifold == "klein") spec.kind = ManifoldKind::klein;
    else if (args.manifold == "circle_with_outliers") spec.kind = ManifoldKind::circle_with_outliers;
    else throw ValidationError("unknown manifold '" + args.manifold + "'");
    spec.n = args.n;
    spec.r = args.r;
    spec.a = args.a;
    spec.b = args.b;
    if (!args.outliers.empty()) spec.outliers = parse_outliers(args.outliers);
    spec.seed = args.seed.value_or(env_seed_fallback());

    const PointCloud cloud = sample(spec);
    write_cloud_csv(args.out, cloud, spec.seed);
    return 0;
}

struct EmbedArgs {
    std::string in;
    std::string method;
    std::string normalization;
    std::size_t k = 0;
    unsigned p = 1;
    double eps = 0.0;
    double delta = 1e-8;
    std::optional<std::uint64_t> seed;
    std::string out;
};

Method resolve_method(const std::string& name, const std::string& normalization) {
    if (const auto m = parse_method(name)) {
        if (!normalization.empty()) {
            const Normalization want = normalization == "symmetric"
                                           ? Normalization::symmetric
                                           : Normalization::bistochastic;
            if (method_normalization(*m) != want)
                throw ValidationError("--normalization conflicts with method " + name);
        }
        return *m;
    }
    // Base spellings take the normalization from the flag.
    if (name == "DM" || name == "GP" || name == "GPSB") {
        if (normalization.empty())
            throw ValidationError("method '" + name + "' requires --normalization");
        const bool sym = normalization == "symmetric";
        if (name == "DM") return sym ? Method::DMS : Method::DMB;
        if (name == "GP") return sym ? Method::GPS : Method::GPB;
        return sym ? Method::GPSBS : Method::GPSBB;
    }
    throw ValidationError("unknown method '" + name + "'");
}

int cmd_embed(const EmbedArgs& args) {
    const Method method = resolve_method(args.method, args.normalization);
    std::uint64_t cloud_seed = 0;
    const PointCloud cloud = read_cloud_csv(args.in, &cloud_seed);
    if (args.k == 0 || args.k >= cloud.size())
        throw ValidationError("embed: need 1 <= k < n (n=" + std::to_string(cloud.size()) + ")");
    if (args.p == 0)
        throw ValidationError("embed: power p must be >= 1");
    if (!(args.eps > 0.0))
        throw ValidationError("embed: eps must be positive");

    const std::uint64_t seed = args.seed.value_or(env_seed_fallback());
    const Embedding emb = embed_cloud(cloud, method, args.k, args.p, args.eps, args.delta, seed);
    write_embedding_csv(args.out, emb, args.eps);
    return 0;
}

struct ExperimentArgs {
    std::string config_path;
    std::string out;
    std::string raw_log;
    unsigned threads = 1;
    std::map<std::string, std::string> overrides;
};

int cmd_experiment(const ExperimentArgs& args) {
    std::map<std::string, std::string> kv;
    if (!args.config_path.empty()) {
        std::string content;
        {
            std::FILE* f = std::fopen(args.config_path.c_str(), "rb");
            if (f == nullptr) throw IoError("cannot open config: " + args.config_path);
            char buf[4096];
            std::size_t got;
            while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) content.append(buf, got);
            std::fclose(f);
        }
        kv = parse_key_values(content);
    }
    for (const auto& [key, value] : args.overrides) kv[key] = value;

    ExperimentConfig cfg = build_experiment_config(kv, env_seed_fallback());
    cfg.threads = args.threads;

    const ExperimentReport report = cfg.powers.empty() ? run_experiment(cfg)
                                                       : run_power_sweep(cfg);
    write_report_csv(args.out, report);
    if (!args.raw_log.empty()) write_raw_log_csv(args.raw_log, report);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heat-kernel embeddings: diffusion maps, Gaussian-process sketching, "
                 "and distortion experiments on synthetic manifolds"};
    app.require_subcommand(1);

    SampleArgs sample_args;
    CLI::App* sample_cmd = app.add_subcommand("sample", "Sample a synthetic manifold to CSV");
    sample_cmd->add_option("--manifold", sample_args.manifold,
                           "circle | flat_torus | klein | circle_with_outliers")->required();
    sample_cmd->add_option("--n", sample_args.n, "number of points")->required();
    sample_cmd->add_option("--r", sample_args.r, "flat_torus radius (> 1)");
    sample_cmd->add_option("--a", sample_args.a, "klein parameter a");
    sample_cmd->add_option("--b", sample_args.b, "klein parameter b");
    sample_cmd->add_option("--outliers", sample_args.outliers, "outlier points 'x,y;x,y;...'");
    sample_cmd->add_option("--seed", sample_args.seed, "RNG seed (default: GPEMBED_SEED or 0)");
    sample_cmd->add_option("--out", sample_args.out, "output CSV path")->required();

    EmbedArgs embed_args;
    CLI::App* embed_cmd = app.add_subcommand("embed", "Embed a point-cloud CSV into R^k");
    embed_cmd->add_option("--in", embed_args.in, "input cloud CSV")->required();
    embed_cmd->add_option("--method", embed_args.method,
                          "DMS|DMB|GPS|GPB|GPSBS|GPSBB (or DM|GP|GPSB with --normalization)")
        ->required();
    embed_cmd->add_option("--normalization", embed_args.normalization, "symmetric | bistochastic")
        ->check(CLI::IsMember({"symmetric", "bistochastic"}));
    embed_cmd->add_option("--k", embed_args.k, "target dimension")->required();
    embed_cmd->add_option("--p", embed_args.p, "kernel power (diffusion time)");
    embed_cmd->add_option("--eps", embed_args.eps, "kernel scale")->required();
    embed_cmd->add_option("--delta", embed_args.delta, "Sinkhorn tolerance (default 1e-8)");
    embed_cmd->add_option("--seed", embed_args.seed, "sketch seed (default: GPEMBED_SEED or 0)");
    embed_cmd->add_option("--out", embed_args.out, "output CSV path")->required();

    ExperimentArgs exp_args;
    std::map<std::string, std::string> flag_values;
    CLI::App* exp_cmd = app.add_subcommand("experiment", "Run a distortion experiment");
    exp_cmd->add_option("config", exp_args.config_path, "key=value config file");
    exp_cmd->add_option("--out", exp_args.out, "report CSV path")->required();
    exp_cmd->add_option("--raw-log", exp_args.raw_log, "optional per-trial log CSV path");
    exp_cmd->add_option("--threads", exp_args.threads, "trial parallelism (0 = auto, default 1)");
    // Every config key is also a flag; flags override file values.
    for (const char* key : {"manifold", "n", "r", "a", "b", "outliers", "trials", "p", "P",
                            "powers", "k", "kmin", "kmax", "eps", "methods", "reference",
                            "delta", "seed"})
        exp_cmd->add_option("--" + std::string(key), flag_values[key]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sample_cmd->parsed()) return cmd_sample(sample_args);
        if (embed_cmd->parsed()) return cmd_embed(embed_args);
        if (exp_cmd->parsed()) {
            for (const auto& [key, value] : flag_values)
                if (exp_cmd->count("--" + key) > 0) exp_args.overrides[key] = value;
            return cmd_experiment(exp_args);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
