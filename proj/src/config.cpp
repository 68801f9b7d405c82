#include "gpembed/config.hpp"

#include "gpembed/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <vector>

namespace gpembed {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

class SchemaErrors {
public:
    void add(const std::string& key, const std::string& message) {
        errors_.push_back(key + ": " + message);
    }
    void raise_if_any() const {
        if (errors_.empty()) return;
        std::string joined = "config errors:";
        for (const std::string& e : errors_) joined += "\n  " + e;
        throw ValidationError(joined);
    }

private:
    std::vector<std::string> errors_;
};

} // namespace

std::map<std::string, std::string> parse_key_values(const std::string& content) {
    std::map<std::string, std::string> kv;
    std::istringstream in(content);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": expected 'key = value', got '" + line + "'");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

ExperimentConfig build_experiment_config(const std::map<std::string, std::string>& kv,
                                         std::uint64_t fallback_seed) {
    static const std::set<std::string> known = {
        "manifold", "n", "r", "a", "b", "outliers", "trials", "p", "P", "powers",
        "k", "kmin", "kmax", "eps", "methods", "reference", "delta", "seed",
    };

    SchemaErrors errors;
    for (const auto& [key, value] : kv)
        if (known.find(key) == known.end()) errors.add(key, "unknown key");

    const auto get = [&](const std::string& key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    const auto need_double = [&](const std::string& key, double& out) -> bool {
        const std::string* v = get(key);
        if (v == nullptr) return false;
        const char* begin = v->data();
        const char* end = begin + v->size();
        const auto [ptr, ec] = std::from_chars(begin, end, out);
        if (ec != std::errc() || ptr != end) {
            errors.add(key, "not a number: '" + *v + "'");
            return false;
        }
        return true;
    };
    const auto need_uint = [&](const std::string& key, std::uint64_t& out) -> bool {
        const std::string* v = get(key);
        if (v == nullptr) return false;
        const char* begin = v->data();
        const char* end = begin + v->size();
        const auto [ptr, ec] = std::from_chars(begin, end, out);
        if (ec != std::errc() || ptr != end) {
            errors.add(key, "not a nonnegative integer: '" + *v + "'");
            return false;
        }
        return true;
    };

    ExperimentConfig cfg;

    // manifold
    if (const std::string* v = get("manifold")) {
        if (*v == "circle") cfg.manifold.kind = ManifoldKind::circle;
        else if (*v == "flat_torus") cfg.manifold.kind = ManifoldKind::flat_torus;
        else if (*v == "klein") cfg.manifold.kind = ManifoldKind::klein;
        else if (*v == "circle_with_outliers") cfg.manifold.kind = ManifoldKind::circle_with_outliers;
        else errors.add("manifold", "unknown manifold '" + *v + "'");
    } else {
        errors.add("manifold", "missing");
    }

    std::uint64_t u = 0;
    if (need_uint("n", u)) cfg.manifold.n = u;
    else if (get("n") == nullptr) errors.add("n", "missing");

    if (need_uint("trials", u)) cfg.trials = u;
    else if (get("trials") == nullptr) errors.add("trials", "missing");

    double d = 0.0;
    if (need_double("eps", d)) cfg.eps = d;
    else if (get("eps") == nullptr) errors.add("eps", "missing");

    if (need_double("delta", d)) cfg.sinkhorn_delta = d;
    if (need_uint("seed", u)) cfg.master_seed = u;
    else cfg.master_seed = fallback_seed;

    // manifold parameters
    if (cfg.manifold.kind == ManifoldKind::flat_torus) {
        if (need_double("r", d)) cfg.manifold.r = d;
        else if (get("r") == nullptr) errors.add("r", "missing (required for flat_torus)");
    }
    if (cfg.manifold.kind == ManifoldKind::klein) {
        if (need_double("a", d)) cfg.manifold.a = d;
        else if (get("a") == nullptr) errors.add("a", "missing (required for klein)");
        if (need_double("b", d)) cfg.manifold.b = d;
        else if (get("b") == nullptr) errors.add("b", "missing (required for klein)");
    }
    if (cfg.manifold.kind == ManifoldKind::circle_with_outliers) {
        if (const std::string* v = get("outliers")) {
            for (const std::string& point : split_list(*v, ';')) {
                const std::vector<std::string> coords = split_list(point, ',');
                double x = 0.0;
                double y = 0.0;
                bool ok = coords.size() == 2;
                if (ok) {
                    try {
                        x = std::stod(coords[0]);
                        y = std::stod(coords[1]);
                    } catch (const std::exception&) {
                        ok = false;
                    }
                }
                if (!ok) {
                    errors.add("outliers", "expected 'x,y ; x,y ; ...', got '" + point + "'");
                    break;
                }
                cfg.manifold.outliers.push_back({x, y});
            }
        } else {
            errors.add("outliers", "missing (required for circle_with_outliers)");
        }
    }

    // target dimensions
    const bool has_k = get("k") != nullptr;
    const bool has_range = get("kmin") != nullptr || get("kmax") != nullptr;
    if (has_k && has_range) {
        errors.add("k", "give either k or kmin/kmax, not both");
    } else if (has_k) {
        if (need_uint("k", u)) cfg.k_min = cfg.k_max = u;
    } else if (has_range) {
        if (need_uint("kmin", u)) cfg.k_min = u;
        else if (get("kmin") == nullptr) errors.add("kmin", "missing (kmax given)");
        if (need_uint("kmax", u)) cfg.k_max = u;
        else if (get("kmax") == nullptr) errors.add("kmax", "missing (kmin given)");
    } else {
        errors.add("k", "missing (give k or kmin/kmax)");
    }

    // powers
    const bool has_p = get("p") != nullptr;
    const bool has_P = get("P") != nullptr;
    const bool has_powers = get("powers") != nullptr;
    if (has_P && has_powers) {
        errors.add("powers", "give either P or powers, not both");
    } else if (has_P) {
        if (need_uint("P", u)) {
            if (u == 0 || u > 30) {
                errors.add("P", "need 1 <= P <= 30");
            } else {
                for (std::uint64_t e = 1; e <= u; ++e)
                    cfg.powers.push_back(static_cast<unsigned>(1u << e));
            }
        }
    } else if (has_powers) {
        for (const std::string& tok : split_list(*get("powers"), ',')) {
            try {
                cfg.powers.push_back(static_cast<unsigned>(std::stoul(tok)));
            } catch (const std::exception&) {
                errors.add("powers", "not an integer list: '" + tok + "'");
                break;
            }
        }
    }
    if (has_p) {
        if (need_uint("p", u)) cfg.p = static_cast<unsigned>(u);
    } else if (!has_P && !has_powers) {
        errors.add("p", "missing (give p, P, or powers)");
    }

    // methods
    if (const std::string* v = get("methods")) {
        for (const std::string& name : split_list(*v, ',')) {
            const auto m = parse_method(name);
            if (!m.has_value()) {
                errors.add("methods", "unknown method '" + name + "'");
                continue;
            }
            cfg.methods.push_back(*m);
        }
    } else {
        errors.add("methods", "missing");
    }

    if (const std::string* v = get("reference")) {
        if (*v == "diffusion") cfg.reference = ReferenceMetric::diffusion;
        else if (*v == "euclidean") cfg.reference = ReferenceMetric::euclidean;
        else errors.add("reference", "expected diffusion or euclidean, got '" + *v + "'");
    }

    errors.raise_if_any();
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_experiment_config(const std::string& content, std::uint64_t fallback_seed) {
    return build_experiment_config(parse_key_values(content), fallback_seed);
}

} // namespace gpembed
