#include "gpembed/io.hpp"

#include "gpembed/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace gpembed {

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out)
        throw IoError("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("read failed: " + path);
    return buf.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::string& token) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ValidationError("malformed number in CSV: '" + token + "'");
    return value;
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc())
        throw IoError("double formatting failed");
    return std::string(buf, ptr);
}

std::string cloud_to_csv(const PointCloud& cloud, std::uint64_t seed) {
    std::ostringstream out;
    out << "# label=" << cloud.label() << ";seed=" << seed << "\n";
    for (std::size_t d = 0; d < cloud.dim(); ++d)
        out << (d ? "," : "") << "x" << d;
    out << "\n";
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (std::size_t d = 0; d < cloud.dim(); ++d)
            out << (d ? "," : "") << format_double(cloud.points()(i, d));
        out << "\n";
    }
    return out.str();
}

void write_cloud_csv(const std::string& path, const PointCloud& cloud, std::uint64_t seed) {
    write_file(path, cloud_to_csv(cloud, seed));
}

PointCloud read_cloud_csv(const std::string& path, std::uint64_t* seed_out) {
    const std::string content = read_file(path);
    std::istringstream in(content);
    std::string line;
    std::string label = "imported";
    std::vector<std::vector<double>> rows;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::size_t lpos = line.find("label=");
            const std::size_t spos = line.rfind(";seed=");
            if (lpos != std::string::npos) {
                const std::size_t lend = (spos != std::string::npos && spos > lpos)
                                             ? spos : line.size();
                label = line.substr(lpos + 6, lend - lpos - 6);
            }
            if (spos != std::string::npos && seed_out != nullptr)
                *seed_out = std::stoull(line.substr(spos + 6));
            continue;
        }
        if (!saw_header) {
            saw_header = true;  // column-name row
            continue;
        }
        const std::vector<std::string> tokens = split(line, ',');
        std::vector<double> values;
        values.reserve(tokens.size());
        for (const std::string& t : tokens) values.push_back(parse_double(t));
        if (!rows.empty() && values.size() != rows.front().size())
            throw ValidationError("cloud CSV: inconsistent row width in " + path);
        rows.push_back(std::move(values));
    }
    if (rows.empty())
        throw ValidationError("cloud CSV: no data rows in " + path);
    Matrix pts(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t d = 0; d < rows[i].size(); ++d) pts(i, d) = rows[i][d];
    return PointCloud(std::move(pts), label);
}

std::string embedding_to_csv(const Embedding& embedding, double eps) {
    std::ostringstream out;
    out << "# method=" << method_name(embedding.method)
        << ";k=" << embedding.coords.cols()
        << ";p=" << format_double(embedding.power)
        << ";eps=" << format_double(eps);
    if (embedding.seed.has_value()) out << ";seed=" << *embedding.seed;
    out << "\n";
    for (std::size_t c = 0; c < embedding.coords.cols(); ++c)
        out << (c ? "," : "") << "y" << c;
    out << "\n";
    for (std::size_t i = 0; i < embedding.coords.rows(); ++i) {
        for (std::size_t c = 0; c < embedding.coords.cols(); ++c)
            out << (c ? "," : "") << format_double(embedding.coords(i, c));
        out << "\n";
    }
    return out.str();
}

void write_embedding_csv(const std::string& path, const Embedding& embedding, double eps) {
    write_file(path, embedding_to_csv(embedding, eps));
}

std::string report_to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "method,k,p,mean_logL,std_logL,collapse_count,trials\n";
    for (const ReportRow& row : report.rows) {
        out << method_name(row.method) << ',' << row.k << ',' << row.p << ','
            << format_double(row.mean_logL) << ',' << format_double(row.std_logL) << ','
            << row.collapse_count << ',' << row.trials << "\n";
    }
    return out.str();
}

void write_report_csv(const std::string& path, const ExperimentReport& report) {
    write_file(path, report_to_csv(report));
}

std::string raw_log_to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "trial,method,k,p,logL,collapsed\n";
    for (const RawRecord& rec : report.raw) {
        out << rec.trial << ',' << method_name(rec.method) << ',' << rec.k << ',' << rec.p << ','
            << format_double(rec.logL) << ',' << (rec.collapsed ? 1 : 0) << "\n";
    }
    return out.str();
}

void write_raw_log_csv(const std::string& path, const ExperimentReport& report) {
    write_file(path, raw_log_to_csv(report));
}

} // namespace gpembed
