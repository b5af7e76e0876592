#pragma once

#include <string>
#include <vector>

namespace mvnet {

// Weight file: text header "arch=<mlp|lstm> dims=<d0,d1,...> count=<N>\n"
// followed by N little-endian IEEE-754 doubles in flatten order.
struct ParamFile {
  std::string arch;
  std::vector<int> dims;
  std::vector<double> data;
};

void save_params(const ParamFile& file, const std::string& path);

// Throws on malformed headers; if expected_arch/expected_dims are non-empty
// they are checked against the header (architecture-mismatch guard).
ParamFile load_params(const std::string& path, const std::string& expected_arch = "",
                      const std::vector<int>& expected_dims = {});

}  // namespace mvnet
