#pragma once

#include <string>
#include <vector>

#include "cnr/converge.hpp"
#include "cnr/setgeom.hpp"

namespace cnr {

// {holds, worst_point:[re,im], worst_t, worst_gap}
std::string to_json(const StarReport& r);
// {pairwise:[...], cauchy_tail}
std::string to_json(const LadderLimitReport& r);
// {sizes, pairwise_hausdorff, star_centers:[[re,im],...], center_decay, cauchy_tail, cloud_files}
std::string to_json(const ConvergenceReport& r, const std::vector<std::string>& cloud_files);

// Schema checks used before a command exits; throw ParseError on mismatch.
void validate_star_report_json(const std::string& text);
void validate_ladder_report_json(const std::string& text);
void validate_convergence_report_json(const std::string& text);

}  // namespace cnr
