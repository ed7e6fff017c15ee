#pragma once

#include <string>
#include <vector>

namespace vdl {

// %.17g: shortest representation that reparses to the same double
std::string g17(double v);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

} // namespace vdl
