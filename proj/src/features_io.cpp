#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "wasscore/error.hpp"
#include "wasscore/harness.hpp"

namespace wasscore {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view token, double& out) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return false;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint32_t read_u32(std::span<const unsigned char> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<unsigned char>((v >> (8 * k)) & 0xFFu));
}

}  // namespace

FeatureFormat feature_format_from_string(std::string_view name) {
  if (name == "csv") return FeatureFormat::Csv;
  if (name == "fmat") return FeatureFormat::Fmat;
  throw Error(ErrorCode::InvalidArgument, "unknown feature format '" + std::string(name) + "'");
}

std::string_view to_string(FeatureFormat format) {
  return format == FeatureFormat::Csv ? "csv" : "fmat";
}

FeatureMatrix parse_csv_features(std::string_view text) {
  std::vector<double> values;
  std::size_t dim = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool first = true;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;

    const auto fields = split(line);
    std::vector<double> parsed(fields.size());
    std::size_t bad = fields.size();
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (!parse_number(fields[k], parsed[k])) {
        bad = k;
        break;
      }
    }
    if (bad != fields.size()) {
      if (first) {
        first = false;
        dim = fields.size();
        continue;  // header row
      }
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ", field " +
                                             std::to_string(bad + 1) + ": '" +
                                             std::string(trim(fields[bad])) + "' is not a number");
    }
    first = false;
    if (dim == 0) dim = fields.size();
    if (fields.size() != dim) {
      throw Error(ErrorCode::ShapeError, "line " + std::to_string(line_no) + " has " +
                                             std::to_string(fields.size()) + " fields, expected " +
                                             std::to_string(dim));
    }
    values.insert(values.end(), parsed.begin(), parsed.end());
    ++rows;
  }
  return FeatureMatrix(rows, dim, std::move(values));
}

FeatureMatrix parse_fmat_features(std::span<const unsigned char> bytes) {
  if (bytes.size() < 12) {
    throw Error(ErrorCode::ParseError, "fmat header truncated at byte " + std::to_string(bytes.size()));
  }
  if (std::memcmp(bytes.data(), "FMAT", 4) != 0) {
    throw Error(ErrorCode::ParseError, "bad fmat magic at byte 0");
  }
  const std::uint64_t n = read_u32(bytes, 4);
  const std::uint64_t d = read_u32(bytes, 8);
  const std::uint64_t expected = 12 + 4 * n * d;
  if (bytes.size() != expected) {
    throw Error(ErrorCode::ParseError, "fmat payload ends at byte " + std::to_string(bytes.size()) +
                                           ", header implies " + std::to_string(expected));
  }
  std::vector<double> values(static_cast<std::size_t>(n * d));
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = static_cast<double>(std::bit_cast<float>(read_u32(bytes, 12 + 4 * k)));
  }
  return FeatureMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(d), std::move(values));
}

std::vector<unsigned char> encode_fmat(const FeatureMatrix& features) {
  std::vector<unsigned char> out{'F', 'M', 'A', 'T'};
  put_u32(out, static_cast<std::uint32_t>(features.n_points()));
  put_u32(out, static_cast<std::uint32_t>(features.dim()));
  for (const double v : features.values()) {
    put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  return out;
}

FeatureMatrix load_features(const std::filesystem::path& path, FeatureFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (format == FeatureFormat::Fmat) return parse_fmat_features(bytes);
  return parse_csv_features(
      std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

void save_fmat(const std::filesystem::path& path, const FeatureMatrix& features) {
  const auto bytes = encode_fmat(features);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace wasscore
