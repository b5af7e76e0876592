#include "mvnet/params_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "weight files are little-endian; byte swapping is not implemented");

namespace mvnet {

void save_params(const ParamFile& file, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_params: cannot open " + path);
  out << "arch=" << file.arch << " dims=";
  for (std::size_t i = 0; i < file.dims.size(); ++i) {
    if (i) out << ',';
    out << file.dims[i];
  }
  out << " count=" << file.data.size() << '\n';
  out.write(reinterpret_cast<const char*>(file.data.data()),
            static_cast<std::streamsize>(file.data.size() * sizeof(double)));
  if (!out) throw std::runtime_error("save_params: write failed for " + path);
}

ParamFile load_params(const std::string& path, const std::string& expected_arch,
                      const std::vector<int>& expected_dims) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_params: cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("load_params: missing header");

  ParamFile file;
  std::size_t count = 0;
  {
    std::stringstream ss(header);
    std::string tok;
    bool have_arch = false, have_dims = false, have_count = false;
    while (ss >> tok) {
      if (tok.rfind("arch=", 0) == 0) {
        file.arch = tok.substr(5);
        have_arch = true;
      } else if (tok.rfind("dims=", 0) == 0) {
        std::stringstream ds(tok.substr(5));
        std::string d;
        while (std::getline(ds, d, ',')) file.dims.push_back(std::stoi(d));
        have_dims = true;
      } else if (tok.rfind("count=", 0) == 0) {
        count = std::stoul(tok.substr(6));
        have_count = true;
      } else {
        throw std::runtime_error("load_params: unrecognized header field '" + tok + "'");
      }
    }
    if (!have_arch || !have_dims || !have_count)
      throw std::runtime_error("load_params: corrupted header in " + path);
  }
  if (!expected_arch.empty() && file.arch != expected_arch)
    throw std::runtime_error("load_params: architecture mismatch: file is '" + file.arch +
                             "', expected '" + expected_arch + "'");
  if (!expected_dims.empty() && file.dims != expected_dims)
    throw std::runtime_error("load_params: dimension mismatch in " + path);

  file.data.resize(count);
  in.read(reinterpret_cast<char*>(file.data.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != count * sizeof(double))
    throw std::runtime_error("load_params: truncated weight data in " + path);
  return file;
}

}  // namespace mvnet
