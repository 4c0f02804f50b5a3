#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace nccell {

/// Text of a shipped data file, keyed "presentations/g2st.ncp" style.
std::optional<std::string_view> embedded_source(std::string_view path);
std::vector<std::string_view> embedded_paths();

}  // namespace nccell
