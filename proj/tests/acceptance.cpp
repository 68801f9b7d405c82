// Acceptance suite: runs every criterion end to end and prints one PASS/FAIL
// line per criterion. Exits nonzero if any criterion fails.

#include "gpembed/embed.hpp"
#include "gpembed/harness.hpp"
#include "gpembed/io.hpp"
#include "gpembed/kernel.hpp"
#include "gpembed/manifolds.hpp"
#include "gpembed/metric.hpp"
#include "gpembed/rng.hpp"
#include "gpembed/simd.hpp"
#include "gpembed/spectral.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

using namespace gpembed;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

struct Check {
    Outcome* out;
    void require(bool ok, const std::string& what) {
        if (ok) return;
        out->passed = false;
        if (!out->detail.empty()) out->detail += "; ";
        out->detail += what;
    }
};

Matrix random_psd(std::size_t n, std::uint64_t seed) {
    Matrix r(n, n);
    Rng rng(seed);
    for (double& v : r.data()) v = rng.next_gaussian();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += r(k, i) * r(k, j);
            acc /= static_cast<double>(n);
            out(i, j) = acc;
            out(j, i) = acc;
        }
    return out;
}

PointCloud cloud_of(ManifoldKind kind, std::size_t n, std::uint64_t seed) {
    ManifoldSpec spec;
    spec.kind = kind;
    spec.n = n;
    spec.seed = seed;
    if (kind == ManifoldKind::flat_torus) spec.r = 3.5;
    if (kind == ManifoldKind::klein) {
        spec.a = 10.0;
        spec.b = 5.0;
    }
    if (kind == ManifoldKind::circle_with_outliers) spec.outliers = {{0.0, 3.0}, {3.0, 0.0}};
    return sample(spec);
}

const ReportRow& row_of(const ExperimentReport& report, Method m, std::size_t k) {
    for (const ReportRow& row : report.rows)
        if (row.method == m && row.k == k) return row;
    throw NumericalError("report row missing");
}

double pooled_std(const ReportRow& a, const ReportRow& b) {
    return std::sqrt((a.std_logL * a.std_logL + b.std_logL * b.std_logL) / 2.0);
}

std::string temp_path(const char* tag, int idx) {
    return "/tmp/gpembed_acceptance_" + std::to_string(::getpid()) + "_" + tag + "_" +
           std::to_string(idx) + ".csv";
}

// --- criteria ---------------------------------------------------------------

void criterion_1_bistochastic_convergence(Check c) {
    for (int i = 0; i < 20; ++i) {
        double eps = 0.0;
        ManifoldKind kind{};
        switch (i % 4) {
            case 0: kind = ManifoldKind::circle; eps = 0.25; break;
            case 1: kind = ManifoldKind::flat_torus; eps = 1.0; break;
            case 2: kind = ManifoldKind::klein; eps = 10.0; break;
            case 3: kind = ManifoldKind::circle_with_outliers; eps = 0.8; break;
        }
        const PointCloud cloud = cloud_of(kind, 100, 9000 + i);
        SinkhornInfo info;
        const KernelMatrix b = normalize_bistochastic(affinity(cloud, eps), 1e-8, 100000, &info);
        c.require(info.iterations <= 100000, "iteration budget exceeded");
        for (const double s : row_sums(b.entries()))
            c.require(std::fabs(s - 1.0) <= 1e-6, "row sum off by " + std::to_string(s - 1.0));
        for (const double s : row_sums(transpose(b.entries())))
            c.require(std::fabs(s - 1.0) <= 1e-6, "column sum off by " + std::to_string(s - 1.0));
    }
}

void criterion_2_dual_formula(Check c) {
    for (int inst = 0; inst < 10; ++inst) {
        const std::size_t n = 12 + 3 * static_cast<std::size_t>(inst);  // 12..39
        const ManifoldKind kind = inst % 3 == 0 ? ManifoldKind::circle
                                : inst % 3 == 1 ? ManifoldKind::flat_torus
                                                : ManifoldKind::circle_with_outliers;
        const PointCloud cloud = cloud_of(kind, n, 500 + inst);
        const double eps = kind == ManifoldKind::flat_torus ? 2.0 : 0.5;
        const KernelMatrix raw = affinity(cloud, eps);
        const KernelMatrix a = inst % 2 == 0 ? normalize_symmetric(raw)
                                             : normalize_bistochastic(raw, 1e-8, 2000000);
        const SpectralDecomposition dec = dense_eigh(a.entries());
        for (const unsigned t : {1u, 2u, 4u, 8u}) {
            const DistanceMatrix d = diffusion_distance(a, t);
            double worst = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    double spectral_sq = 0.0;
                    for (std::size_t l = 0; l < n; ++l) {
                        const double diff = dec.eigenvectors(l, i) - dec.eigenvectors(l, j);
                        spectral_sq += std::pow(dec.eigenvalues[l], 2.0 * t) * diff * diff;
                    }
                    const double row_sq = d.entries(i, j) * d.entries(i, j);
                    worst = std::max(worst, std::fabs(spectral_sq - row_sq));
                }
            c.require(worst <= 1e-8,
                      "dual-formula gap " + std::to_string(worst) + " at t=" + std::to_string(t));
        }
    }
}

void criterion_3_sketch_expectation(Check c) {
    const std::size_t n = 20;
    const KernelMatrix a =
        normalize_symmetric(affinity(cloud_of(ManifoldKind::circle, n, 71), 0.25));
    const unsigned p = 2;
    Matrix ap = a.entries();
    for (unsigned s = 1; s < p; ++s) ap = matmul(ap, a.entries());

    Rng pick(314159);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    while (pairs.size() < 10) {
        const auto i = static_cast<std::size_t>(pick.next_uniform() * n);
        const auto j = static_cast<std::size_t>(pick.next_uniform() * n);
        if (i != j) pairs.emplace_back(i, j);
    }

    const int m = 5000;
    for (const SketchDistribution dist :
         {SketchDistribution::gaussian, SketchDistribution::symmetric_bernoulli}) {
        std::vector<std::vector<double>> samples(pairs.size());
        for (auto& s : samples) s.reserve(m);
        for (int trial = 0; trial < m; ++trial) {
            const SketchMatrix g = make_sketch(n, 1, dist, derive_seed(606060, "acc3", trial));
            const Embedding emb = gp_embedding(a, 1, p, g);
            for (std::size_t q = 0; q < pairs.size(); ++q) {
                const double diff = emb.coords(pairs[q].first, 0) - emb.coords(pairs[q].second, 0);
                samples[q].push_back(diff * diff);
            }
        }
        for (std::size_t q = 0; q < pairs.size(); ++q) {
            const double expected =
                simd::sqdist(ap.row(pairs[q].first), ap.row(pairs[q].second), n);
            double mean = 0.0;
            for (const double v : samples[q]) mean += v;
            mean /= m;
            double var = 0.0;
            for (const double v : samples[q]) var += (v - mean) * (v - mean);
            const double se = std::sqrt(var / (m - 1.0) / m);
            c.require(std::fabs(mean - expected) <= 5.0 * se,
                      "pair mean off by " + std::to_string((mean - expected) / se) + " SEs");
        }
    }
}

void criterion_4_covariance_identity(Check c) {
    const std::size_t n = 15;
    const KernelMatrix a =
        normalize_symmetric(affinity(cloud_of(ManifoldKind::circle, n, 81), 0.5));
    const Matrix a2 = matmul(a.entries(), a.entries());

    const int m = 20000;
    Matrix second_moment(n, n);
    Rng rng(424242);
    std::vector<double> g(n);
    for (int trial = 0; trial < m; ++trial) {
        for (double& v : g) v = rng.next_gaussian();
        const std::vector<double> f = matvec(a.entries(), g);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) second_moment(i, j) += f[i] * f[j];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double emp = second_moment(i, j) / m;
            const double se = std::sqrt((a2(i, i) * a2(j, j) + a2(i, j) * a2(i, j)) / m);
            c.require(std::fabs(emp - a2(i, j)) <= 5.0 * se,
                      "covariance entry off by " + std::to_string((emp - a2(i, j)) / se) + " SEs");
        }
}

void criterion_5_robustness(Check c) {
    const std::size_t n = 15;
    const Matrix a = random_psd(n, 1001);
    Matrix b = random_psd(n, 1002);
    for (std::size_t i = 0; i < b.data().size(); ++i)
        b.data()[i] = 0.7 * a.data()[i] + 0.3 * b.data()[i];

    Matrix d = a;
    for (std::size_t i = 0; i < d.data().size(); ++i) d.data()[i] -= b.data()[i];
    const double frob2 = frobenius_norm(d) * frobenius_norm(d);

    const SpectralDecomposition mu = dense_eigh(d);
    double mu4 = 0.0;
    for (const double m : mu.eigenvalues) mu4 += m * m * m * m;
    const std::size_t k = 4;
    const double oracle_variance = (2.0 / static_cast<double>(k)) * mu4;

    const KernelMatrix ka = KernelMatrix::from_matrix(a, Normalization::symmetric, 1.0);
    const KernelMatrix kb = KernelMatrix::from_matrix(b, Normalization::symmetric, 1.0);
    const int m = 5000;
    std::vector<double> samples;
    samples.reserve(m);
    for (int trial = 0; trial < m; ++trial) {
        const SketchMatrix g =
            make_sketch(n, k, SketchDistribution::gaussian, derive_seed(515151, "acc5", trial));
        const Embedding ya = gp_embedding(ka, k, 1, g);
        const Embedding yb = gp_embedding(kb, k, 1, g);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            total += simd::sqdist(ya.coords.row(i), yb.coords.row(i), k);
        samples.push_back(total);
    }
    double mean = 0.0;
    for (const double v : samples) mean += v;
    mean /= m;
    double var = 0.0;
    for (const double v : samples) var += (v - mean) * (v - mean);
    var /= (m - 1.0);
    const double se = std::sqrt(var / m);
    c.require(std::fabs(mean - frob2) <= 5.0 * se,
              "mean off by " + std::to_string((mean - frob2) / se) + " SEs");
    c.require(std::fabs(var - oracle_variance) <= 0.10 * oracle_variance,
              "variance " + std::to_string(var) + " vs oracle " + std::to_string(oracle_variance));
}

void criterion_6_distortion_statistic(Check c) {
    Rng rng(616161);
    for (int inst = 0; inst < 5; ++inst) {
        Matrix coords(15, 3);
        for (double& v : coords.data()) v = rng.next_gaussian();
        const DistanceMatrix ref = pairwise_euclidean(coords);
        for (const double scale : {0.37, 1.0, 211.0}) {
            DistanceMatrix emb = ref;
            for (double& v : emb.entries.data()) v *= scale;
            c.require(std::fabs(bilipschitz_distortion(emb, ref) - 1.0) <= 1e-12,
                      "scalar multiple distortion != 1");
        }

        Matrix other(15, 4);
        for (double& v : other.data()) v = rng.next_gaussian();
        const DistanceMatrix emb = pairwise_euclidean(other);
        double max_dil = -1.0;
        double min_dil = kInfiniteDistortion;
        for (std::size_t i = 0; i < 15; ++i)
            for (std::size_t j = i + 1; j < 15; ++j)
                if (ref.entries(i, j) > 1e-12) {
                    const double dil = emb.entries(i, j) / ref.entries(i, j);
                    max_dil = std::max(max_dil, dil);
                    min_dil = std::min(min_dil, dil);
                }
        c.require(bilipschitz_distortion(emb, ref) == max_dil / min_dil,
                  "pair-scan oracle mismatch");
    }
}

void criterion_7_circle_figure(Check c) {
    ExperimentConfig cfg;
    cfg.manifold.kind = ManifoldKind::circle;
    cfg.manifold.n = 300;
    cfg.trials = 20;
    cfg.p = 8;
    cfg.k_min = 2;
    cfg.k_max = 8;
    cfg.eps = 0.25;
    cfg.methods = {Method::DMS, Method::GPS};
    cfg.reference = ReferenceMetric::diffusion;
    cfg.master_seed = 20250809;
    cfg.threads = 2;
    const ExperimentReport report = run_experiment(cfg);
    const ReportRow& dms2 = row_of(report, Method::DMS, 2);
    const ReportRow& gps2 = row_of(report, Method::GPS, 2);
    const ReportRow& gps8 = row_of(report, Method::GPS, 8);
    c.require(gps2.mean_logL - dms2.mean_logL >= pooled_std(dms2, gps2),
              "DMS advantage below one pooled std at k=2");
    c.require(gps8.mean_logL < gps2.mean_logL, "GPS does not improve from k=2 to k=8");
}

ExperimentReport run_torus_figure(Check c) {
    ExperimentConfig cfg;
    cfg.manifold.kind = ManifoldKind::flat_torus;
    cfg.manifold.r = 3.5;
    cfg.manifold.n = 300;
    cfg.trials = 10;
    cfg.p = 10;
    cfg.k_min = 4;
    cfg.k_max = 7;
    cfg.eps = 0.3;
    cfg.methods = {Method::DMS, Method::GPS, Method::GPSBS};
    cfg.reference = ReferenceMetric::diffusion;
    cfg.master_seed = 404;
    cfg.threads = 2;
    ExperimentReport report = run_experiment(cfg);
    for (std::size_t k = 4; k <= 7; ++k)
        c.require(row_of(report, Method::GPS, k).mean_logL <
                      row_of(report, Method::DMS, k).mean_logL,
                  "GPS not below DMS at k=" + std::to_string(k));
    return report;
}

void criterion_9_outliers(Check c) {
    ExperimentConfig cfg;
    cfg.manifold.kind = ManifoldKind::circle_with_outliers;
    cfg.manifold.outliers = {{0.0, 3.0}, {3.0, 0.0}};
    cfg.manifold.n = 200;
    cfg.trials = 10;
    cfg.p = 4;
    cfg.k_min = 2;
    cfg.k_max = 5;
    cfg.eps = 0.5;
    cfg.methods = {Method::DMS, Method::GPS};
    cfg.reference = ReferenceMetric::diffusion;
    cfg.master_seed = 20250811;
    cfg.threads = 2;
    const ExperimentReport report = run_experiment(cfg);
    for (const std::size_t k : {std::size_t{2}, std::size_t{3}})
        c.require(row_of(report, Method::GPS, k).mean_logL <
                      row_of(report, Method::DMS, k).mean_logL,
                  "GPS not below DMS at k=" + std::to_string(k));
    c.require(row_of(report, Method::DMS, 5).mean_logL < row_of(report, Method::DMS, 2).mean_logL,
              "DMS at k=5 not below its k=2 value");
}

void criterion_10_bernoulli_parity(Check c, const ExperimentReport& torus_report) {
    for (std::size_t k = 4; k <= 7; ++k) {
        const ReportRow& gps = row_of(torus_report, Method::GPS, k);
        const ReportRow& bern = row_of(torus_report, Method::GPSBS, k);
        c.require(std::fabs(gps.mean_logL - bern.mean_logL) <= pooled_std(gps, bern),
                  "parity gap above one pooled std at k=" + std::to_string(k));
    }
}

void criterion_11_determinism(Check c) {
    ExperimentConfig cfg;
    cfg.manifold.kind = ManifoldKind::circle_with_outliers;
    cfg.manifold.outliers = {{0.0, 3.0}, {3.0, 0.0}};
    cfg.manifold.n = 80;
    cfg.trials = 3;
    cfg.p = 4;
    cfg.k_min = 2;
    cfg.k_max = 4;
    cfg.eps = 0.5;
    cfg.methods = {Method::DMS, Method::GPS, Method::GPSBB};
    cfg.reference = ReferenceMetric::diffusion;
    cfg.master_seed = 777777;

    const std::string p1 = temp_path("det", 1);
    const std::string p2 = temp_path("det", 2);
    write_report_csv(p1, run_experiment(cfg));
    cfg.threads = 2;
    write_report_csv(p2, run_experiment(cfg));
    std::ifstream f1(p1, std::ios::binary);
    std::ifstream f2(p2, std::ios::binary);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    c.require(!s1.str().empty() && s1.str() == s2.str(), "experiment reruns differ");
    std::remove(p1.c_str());
    std::remove(p2.c_str());

    ExperimentConfig sweep = cfg;
    sweep.k_min = sweep.k_max = 3;
    sweep.reference = ReferenceMetric::euclidean;
    sweep.powers = {2, 4, 8};
    sweep.threads = 1;
    const std::string a = report_to_csv(run_power_sweep(sweep));
    sweep.threads = 2;
    const std::string b = report_to_csv(run_power_sweep(sweep));
    c.require(!a.empty() && a == b, "sweep reruns differ");
}

void criterion_12_randomized_parity(Check c) {
    const KernelMatrix a =
        normalize_symmetric(affinity(cloud_of(ManifoldKind::circle, 300, 3001), 0.25));
    const SpectralDecomposition dense = top_eigenpairs(a, 8, EigMethod::dense);
    const SpectralDecomposition rand = top_eigenpairs(a, 8, EigMethod::randomized, 8, 4);
    for (std::size_t i = 0; i < 8; ++i) {
        const double rel =
            std::fabs(dense.eigenvalues[i] - rand.eigenvalues[i]) / std::fabs(dense.eigenvalues[i]);
        c.require(rel <= 1e-6,
                  "eigenvalue " + std::to_string(i) + " relative gap " + std::to_string(rel));
    }
}

} // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        double budget_seconds;  // 0 = none stated
        std::function<void(Check)> run;
    };

    ExperimentReport torus_report;  // shared by criteria 8 and 10

    const std::vector<Entry> entries = {
        {1, "bistochastic convergence on 20 mixed clouds", 10.0, criterion_1_bistochastic_convergence},
        {2, "diffusion-distance dual formula", 0.0, criterion_2_dual_formula},
        {3, "sketch expectation identity, Gaussian and Bernoulli", 30.0, criterion_3_sketch_expectation},
        {4, "discrete Karhunen-Loeve covariance identity", 30.0, criterion_4_covariance_identity},
        {5, "shared-sketch robustness mean and variance", 0.0, criterion_5_robustness},
        {6, "biLipschitz distortion statistic", 0.0, criterion_6_distortion_statistic},
        {7, "circle: DMS beats GPS at k=2 by one pooled std", 300.0, criterion_7_circle_figure},
        {8, "stretched torus: GPS beats DMS for k in 4..7", 600.0,
         [&torus_report](Check c) { torus_report = run_torus_figure(c); }},
        {9, "outliers: GPS wins at k=2,3; DMS recovers by k=5", 0.0, criterion_9_outliers},
        {10, "Bernoulli sketch parity within one pooled std", 0.0,
         [&torus_report](Check c) { criterion_10_bernoulli_parity(c, torus_report); }},
        {11, "byte-identical reruns across thread counts", 0.0, criterion_11_determinism},
        {12, "randomized eigensolver matches dense to 1e-6", 0.0, criterion_12_randomized_parity},
    };

    int failures = 0;
    for (const Entry& entry : entries) {
        Outcome outcome;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            entry.run(Check{&outcome});
        } catch (const std::exception& e) {
            outcome.passed = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (entry.budget_seconds > 0.0 && seconds > entry.budget_seconds) {
            outcome.passed = false;
            outcome.detail += (outcome.detail.empty() ? "" : "; ") + std::string("runtime ") +
                              std::to_string(seconds) + "s over budget";
        }
        std::printf("[%2d/12] %s  %-52s (%.1fs)%s%s\n", entry.id, outcome.passed ? "PASS" : "FAIL",
                    entry.name, seconds, outcome.detail.empty() ? "" : "  -- ",
                    outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.passed) ++failures;
    }
    std::printf("acceptance: %d/12 criteria passed\n", 12 - failures);
    return failures == 0 ? 0 : 1;
}
