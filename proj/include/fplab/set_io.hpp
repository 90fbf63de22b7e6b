#pragma once

#include <filesystem>
#include <string>

#include "fplab/fpset.hpp"

namespace fplab {

// fpset v1 text format:
//   line 1: "# fpset v1"
//   line 2: "p=<prime>"
//   line 3: comma-separated residues, ascending (empty line for the empty set)
// Round-trips bit-exactly.

std::string to_fpset_text(const FpSet& s);
FpSet from_fpset_text(const std::string& text);
FpSet from_fpset_text(const std::string& text, const FieldRef& expected_ctx);

void write_fpset_file(const FpSet& s, const std::filesystem::path& path);
FpSet read_fpset_file(const std::filesystem::path& path);

}  // namespace fplab
