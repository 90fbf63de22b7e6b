#include "fplab/set_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fplab {

namespace {
constexpr const char* kHeader = "# fpset v1";
}

std::string to_fpset_text(const FpSet& s) {
  std::ostringstream out;
  out << kHeader << '\n' << "p=" << s.prime() << '\n';
  bool first = true;
  s.for_each([&](std::uint64_t x) {
    if (!first) out << ',';
    out << x;
    first = false;
  });
  out << '\n';
  return out.str();
}

namespace {

FpSet parse(const std::string& text, const FieldRef* expected) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw std::invalid_argument("fpset v1: missing '# fpset v1' header");
  if (!std::getline(in, line) || line.rfind("p=", 0) != 0)
    throw std::invalid_argument("fpset v1: missing 'p=<prime>' line");
  std::uint64_t p = 0;
  try {
    std::size_t pos = 0;
    p = std::stoull(line.substr(2), &pos);
    if (pos != line.size() - 2) throw std::invalid_argument("trailing junk");
  } catch (const std::exception&) {
    throw std::invalid_argument("fpset v1: bad modulus line '" + line + "'");
  }
  FieldRef ctx;
  if (expected) {
    if ((*expected)->prime() != p)
      throw std::invalid_argument("fpset v1: file modulus does not match the expected field");
    ctx = *expected;
  } else {
    ctx = make_field(p);
  }
  if (!std::getline(in, line)) line.clear();
  FpSet s(ctx);
  if (!line.empty()) {
    std::istringstream vals(line);
    std::string tok;
    std::int64_t prev = -1;
    while (std::getline(vals, tok, ',')) {
      std::uint64_t x = 0;
      try {
        std::size_t pos = 0;
        x = std::stoull(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("trailing junk");
      } catch (const std::exception&) {
        throw std::invalid_argument("fpset v1: bad residue token '" + tok + "'");
      }
      if (x >= p) throw std::invalid_argument("fpset v1: residue out of range");
      if (static_cast<std::int64_t>(x) <= prev)
        throw std::invalid_argument("fpset v1: residues must be strictly ascending");
      prev = static_cast<std::int64_t>(x);
      s.insert(x);
    }
  }
  return s;
}

}  // namespace

FpSet from_fpset_text(const std::string& text) { return parse(text, nullptr); }

FpSet from_fpset_text(const std::string& text, const FieldRef& expected_ctx) {
  return parse(text, &expected_ctx);
}

void write_fpset_file(const FpSet& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << to_fpset_text(s);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

FpSet read_fpset_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_fpset_text(buf.str());
}

}  // namespace fplab
