#ifndef DMP_MODEL_IO_HPP_
#define DMP_MODEL_IO_HPP_

#include <string>

#include "dmp/dmp.hpp"

namespace dmp {

/// JSON model file with every Dmp field explicit (centers and widths
/// included, so the file is self-contained). Identical models serialize to
/// identical bytes.
std::string dmp_to_json(const Dmp& dmp);
void write_dmp_json(const Dmp& dmp, const std::string& path);

Dmp parse_dmp_json(const std::string& text);
Dmp read_dmp_json(const std::string& path);

}  // namespace dmp

#endif  // DMP_MODEL_IO_HPP_
