#include "gpembed/harness.hpp"

#include "gpembed/error.hpp"
#include "gpembed/metric.hpp"
#include "gpembed/rng.hpp"
#include "gpembed/simd.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace gpembed {

void ExperimentConfig::validate() const {
    ManifoldSpec spec = manifold;
    spec.seed = 0;
    spec.validate();
    if (trials == 0)
        throw ValidationError("experiment config: trials must be >= 1");
    if (methods.empty())
        throw ValidationError("experiment config: methods list is empty");
    for (std::size_t i = 0; i < methods.size(); ++i)
        for (std::size_t j = i + 1; j < methods.size(); ++j)
            if (methods[i] == methods[j])
                throw ValidationError("experiment config: duplicate method in list");
    if (k_min == 0 || k_min > k_max)
        throw ValidationError("experiment config: need 1 <= k_min <= k_max");
    if (k_max > manifold.n - 1)
        throw ValidationError("experiment config: k_max must be <= n - 1");
    if (!(eps > 0.0))
        throw ValidationError("experiment config: eps must be positive");
    if (!(sinkhorn_delta > 0.0))
        throw ValidationError("experiment config: sinkhorn delta must be positive");
    if (powers.empty()) {
        if (p == 0)
            throw ValidationError("experiment config: power p must be >= 1");
    } else {
        unsigned prev = 0;
        for (const unsigned q : powers) {
            if (q == 0)
                throw ValidationError("experiment config: powers must be >= 1");
            if (q <= prev)
                throw ValidationError("experiment config: powers must be strictly increasing");
            prev = q;
        }
    }
}

namespace {

struct Cell {
    double logL;
    bool collapsed;
};

struct TrialOutput {
    std::vector<Cell> cells;  // indexed method-major: ((mi * nk + ki) * np + pi)
};

struct EngineSetup {
    std::vector<std::size_t> ks;
    std::vector<unsigned> powers;
    bool need_sym = false;
    bool need_bis = false;
    bool need_dm = false;
    bool need_gauss = false;
    bool need_bern = false;
};

EngineSetup plan(const ExperimentConfig& cfg, const std::vector<unsigned>& powers) {
    EngineSetup s;
    for (std::size_t k = cfg.k_min; k <= cfg.k_max; ++k) s.ks.push_back(k);
    s.powers = powers;
    for (const Method m : cfg.methods) {
        if (method_normalization(m) == Normalization::symmetric) s.need_sym = true;
        else s.need_bis = true;
        const auto dist = method_distribution(m);
        if (!dist.has_value()) s.need_dm = true;
        else if (*dist == SketchDistribution::gaussian) s.need_gauss = true;
        else s.need_bern = true;
    }
    return s;
}

Cell evaluate(const Matrix& coords, const DistanceMatrix& reference) {
    const DistanceMatrix d = pairwise_euclidean(coords);
    const double L = bilipschitz_distortion(d, reference);
    if (!std::isfinite(L)) return Cell{std::log(kCollapseCap), true};
    return Cell{std::log(L), false};
}

TrialOutput run_trial(const ExperimentConfig& cfg, const EngineSetup& setup, std::size_t trial) {
    const std::uint64_t trial_seed = derive_seed(cfg.master_seed, "trial", trial);

    ManifoldSpec spec = cfg.manifold;
    spec.seed = derive_seed(trial_seed, "cloud");
    const PointCloud cloud = sample(spec);
    const std::size_t n = cloud.size();

    const KernelMatrix raw = affinity(cloud, cfg.eps);
    std::optional<KernelMatrix> a_sym;
    std::optional<KernelMatrix> a_bis;
    if (setup.need_sym) a_sym.emplace(normalize_symmetric(raw));
    if (setup.need_bis) a_bis.emplace(normalize_bistochastic(raw, cfg.sinkhorn_delta));
    const auto kernel_of = [&](Normalization norm) -> const KernelMatrix& {
        return norm == Normalization::symmetric ? *a_sym : *a_bis;
    };
    const std::uint64_t sym_hash = setup.need_sym ? content_hash(a_sym->entries()) : 0;
    const std::uint64_t bis_hash = setup.need_bis ? content_hash(a_bis->entries()) : 0;

    // Reference distances, shared across target dimensions.
    std::optional<DistanceMatrix> ref_eucl;
    std::optional<DistanceMatrix> ref_sym;
    std::optional<DistanceMatrix> ref_bis;
    if (cfg.reference == ReferenceMetric::euclidean) {
        ref_eucl.emplace(pairwise_euclidean(cloud.points(), DistanceKind::euclidean_ambient));
    } else {
        const unsigned t = setup.powers.front();
        if (setup.need_sym) ref_sym.emplace(diffusion_distance(*a_sym, t));
        if (setup.need_bis) ref_bis.emplace(diffusion_distance(*a_bis, t));
    }
    const auto reference_of = [&](Normalization norm) -> const DistanceMatrix& {
        if (cfg.reference == ReferenceMetric::euclidean) return *ref_eucl;
        return norm == Normalization::symmetric ? *ref_sym : *ref_bis;
    };

    // One decomposition per normalization serves every k and p.
    std::optional<SpectralDecomposition> dec_sym;
    std::optional<SpectralDecomposition> dec_bis;
    if (setup.need_dm) {
        for (const Method m : cfg.methods) {
            if (method_distribution(m).has_value()) continue;
            if (method_normalization(m) == Normalization::symmetric) {
                if (!dec_sym) dec_sym.emplace(top_eigenpairs(*a_sym, cfg.k_max + 1));
            } else {
                if (!dec_bis) dec_bis.emplace(top_eigenpairs(*a_bis, cfg.k_max + 1));
            }
        }
    }

    const std::uint64_t gauss_seed = derive_seed(trial_seed, "gaussian-sketch");
    const std::uint64_t bern_seed = derive_seed(trial_seed, "bernoulli-sketch");

    const std::size_t nk = setup.ks.size();
    const std::size_t np = setup.powers.size();
    TrialOutput out;
    out.cells.resize(cfg.methods.size() * nk * np);

    for (std::size_t ki = 0; ki < nk; ++ki) {
        const std::size_t k = setup.ks[ki];
        std::optional<SketchMatrix> g_gauss;
        std::optional<SketchMatrix> g_bern;
        if (setup.need_gauss)
            g_gauss.emplace(make_sketch(n, k, SketchDistribution::gaussian,
                                        derive_seed(gauss_seed, "k", k)));
        if (setup.need_bern)
            g_bern.emplace(make_sketch(n, k, SketchDistribution::symmetric_bernoulli,
                                       derive_seed(bern_seed, "k", k)));

        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            const Method method = cfg.methods[mi];
            const Normalization norm = method_normalization(method);
            const auto dist = method_distribution(method);
            const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));

            if (!dist.has_value()) {
                const SpectralDecomposition& dec =
                    norm == Normalization::symmetric ? *dec_sym : *dec_bis;
                for (std::size_t pi = 0; pi < np; ++pi) {
                    const Embedding emb = diffusion_maps_from_spectral(
                        dec, norm, k, static_cast<double>(setup.powers[pi]));
                    out.cells[(mi * nk + ki) * np + pi] = evaluate(emb.coords, reference_of(norm));
                }
            } else {
                const SketchMatrix& g =
                    *dist == SketchDistribution::gaussian ? *g_gauss : *g_bern;
                // Incremental powering: each power extends the same
                // multiplication chain A(A(...(AG))).
                Matrix w = g.entries;
                unsigned applied = 0;
                for (std::size_t pi = 0; pi < np; ++pi) {
                    const unsigned target = setup.powers[pi];
                    for (; applied < target; ++applied)
                        w = matmul(kernel_of(norm).entries(), w);
                    Matrix coords = w;
                    simd::scale(coords.data().data(), inv_sqrt_k, coords.data().size());
                    out.cells[(mi * nk + ki) * np + pi] = evaluate(coords, reference_of(norm));
                }
            }
        }
    }

    // Paired methods must have seen identical kernels all along.
    if (setup.need_sym && content_hash(a_sym->entries()) != sym_hash)
        throw NumericalError("kernel matrix mutated during trial");
    if (setup.need_bis && content_hash(a_bis->entries()) != bis_hash)
        throw NumericalError("kernel matrix mutated during trial");

    return out;
}

ExperimentReport run_engine(const ExperimentConfig& cfg, const std::vector<unsigned>& powers) {
    const EngineSetup setup = plan(cfg, powers);

    std::vector<TrialOutput> outputs(cfg.trials);
    std::vector<std::string> failures(cfg.trials);
    std::vector<int> failure_kind(cfg.trials, 0);  // 0 ok, 2 validation, 3 numerical

    unsigned threads = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cfg.trials)));

    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        while (true) {
            const std::size_t t = next.fetch_add(1);
            if (t >= cfg.trials) return;
            try {
                outputs[t] = run_trial(cfg, setup, t);
            } catch (const ValidationError& e) {
                failures[t] = e.what();
                failure_kind[t] = 2;
            } catch (const std::exception& e) {
                failures[t] = e.what();
                failure_kind[t] = 3;
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    for (std::size_t t = 0; t < cfg.trials; ++t) {
        if (failure_kind[t] == 2)
            throw ValidationError("trial " + std::to_string(t) + ": " + failures[t]);
        if (failure_kind[t] == 3)
            throw NumericalError("trial " + std::to_string(t) + ": " + failures[t]);
    }

    const std::size_t nk = setup.ks.size();
    const std::size_t np = powers.size();
    ExperimentReport report;
    report.rows.reserve(cfg.methods.size() * nk * np);
    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi)
        for (std::size_t ki = 0; ki < nk; ++ki)
            for (std::size_t pi = 0; pi < np; ++pi) {
                const std::size_t cell = (mi * nk + ki) * np + pi;
                // Welford fold, ordered by trial index.
                double mean = 0.0;
                double m2 = 0.0;
                std::size_t collapses = 0;
                for (std::size_t t = 0; t < cfg.trials; ++t) {
                    const Cell& c = outputs[t].cells[cell];
                    const double delta = c.logL - mean;
                    mean += delta / static_cast<double>(t + 1);
                    m2 += delta * (c.logL - mean);
                    if (c.collapsed) ++collapses;
                }
                const double variance = m2 / static_cast<double>(cfg.trials);
                report.rows.push_back(ReportRow{cfg.methods[mi], setup.ks[ki], powers[pi],
                                                mean, std::sqrt(variance), collapses, cfg.trials});
            }

    report.raw.reserve(cfg.trials * cfg.methods.size() * nk * np);
    for (std::size_t t = 0; t < cfg.trials; ++t)
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi)
            for (std::size_t ki = 0; ki < nk; ++ki)
                for (std::size_t pi = 0; pi < np; ++pi) {
                    const Cell& c = outputs[t].cells[(mi * nk + ki) * np + pi];
                    report.raw.push_back(RawRecord{t, cfg.methods[mi], setup.ks[ki], powers[pi],
                                                   c.logL, c.collapsed});
                }
    return report;
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (!cfg.powers.empty())
        throw ValidationError("run_experiment: config carries a power sweep; use run_power_sweep");
    return run_engine(cfg, {cfg.p});
}

ExperimentReport run_power_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.powers.empty())
        throw ValidationError("run_power_sweep: config has no powers list");
    if (cfg.k_min != cfg.k_max)
        throw ValidationError("run_power_sweep: target dimension k must be fixed");
    if (cfg.reference != ReferenceMetric::euclidean)
        throw ValidationError("run_power_sweep: reference must be euclidean");
    return run_engine(cfg, cfg.powers);
}

} // namespace gpembed
