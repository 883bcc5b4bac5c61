#pragma once

#include <map>
#include <string>

#include "symclust/diag.hpp"
#include "symclust/hclust.hpp"
#include "symclust/model.hpp"

namespace symclust::svg {

// Rectilinear dendrogram. Leaves in display order (left subtree first),
// heights on the vertical axis. When deciles are given, one shaded strip row
// per indicator is drawn under the leaf labels (darker = higher decile).
std::string render_dendrogram(
    const Dendrogram& d,
    const std::map<std::string, std::map<std::string, int>>& deciles = {},
    const std::vector<std::string>& indicator_names = {});

// Per-cluster pattern panels: one dashed polyline per variable over the
// fixed category order.
std::string render_patterns(const Partition& pt, const Dataset& ds);

}  // namespace symclust::svg
