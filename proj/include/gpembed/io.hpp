#pragma once

#include "gpembed/cloud.hpp"
#include "gpembed/embed.hpp"
#include "gpembed/harness_types.hpp"

#include <cstdint>
#include <optional>
#include <string>

// =============================================================================
// CSV formats. All files are UTF-8 with LF line endings and a header row;
// floats are written in shortest round-trip form, so parsing a file back
// recovers the exact doubles.
//
// cloud:      "# label=<text>;seed=<n>" then "x0,..,x{D-1}" then one row per point
// embedding:  "# method=<M>;k=<k>;p=<p>;eps=<eps>[;seed=<n>]" then "y0,.." rows
// report:     "method,k,p,mean_logL,std_logL,collapse_count,trials"
// raw log:    "trial,method,k,p,logL,collapsed"
// =============================================================================

namespace gpembed {

std::string format_double(double value);

std::string cloud_to_csv(const PointCloud& cloud, std::uint64_t seed);
void write_cloud_csv(const std::string& path, const PointCloud& cloud, std::uint64_t seed);
PointCloud read_cloud_csv(const std::string& path, std::uint64_t* seed_out = nullptr);

std::string embedding_to_csv(const Embedding& embedding, double eps);
void write_embedding_csv(const std::string& path, const Embedding& embedding, double eps);

std::string report_to_csv(const ExperimentReport& report);
void write_report_csv(const std::string& path, const ExperimentReport& report);

std::string raw_log_to_csv(const ExperimentReport& report);
void write_raw_log_csv(const std::string& path, const ExperimentReport& report);

} // namespace gpembed
