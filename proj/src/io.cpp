#include "wptv/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <vector>

namespace wptv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr char kMagic[4] = {'P', 'H', 'F', '2'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kMaxDim = 1u << 20;

void put_u32le(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<unsigned char>(v >> (8 * k)));
}

void put_u64le(std::vector<unsigned char>& out, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<unsigned char>(v >> (8 * k)));
}

std::uint32_t get_u32le(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int k = 3; k >= 0; --k) v = (v << 8) | p[k];
  return v;
}

std::uint64_t get_u64le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int k = 7; k >= 0; --k) v = (v << 8) | p[k];
  return v;
}

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (!in.good() && !in.eof()) throw IoError("read failure on " + path.string());
  return bytes;
}

void write_all(const std::filesystem::path& path,
               const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace

void write_field(const std::filesystem::path& path, const Field2D& field) {
  std::vector<unsigned char> bytes;
  bytes.reserve(16 + field.size() * 8);
  bytes.insert(bytes.end(), kMagic, kMagic + 4);
  put_u32le(bytes, kVersion);
  put_u32le(bytes, static_cast<std::uint32_t>(field.rows()));
  put_u32le(bytes, static_cast<std::uint32_t>(field.cols()));
  for (double v : field.values()) put_u64le(bytes, std::bit_cast<std::uint64_t>(v));
  write_all(path, bytes);
}

Field2D read_field(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = read_all(path);
  if (bytes.size() < 16 || !std::equal(kMagic, kMagic + 4, bytes.begin())) {
    throw IoError(path.string() + ": not a PHF2 field file");
  }
  if (get_u32le(bytes.data() + 4) != kVersion) {
    throw IoError(path.string() + ": unsupported PHF2 version");
  }
  const std::uint32_t rows = get_u32le(bytes.data() + 8);
  const std::uint32_t cols = get_u32le(bytes.data() + 12);
  if (rows < 2 || cols < 2 || rows > kMaxDim || cols > kMaxDim) {
    throw IoError(path.string() + ": bad PHF2 dimensions");
  }
  const std::size_t count = static_cast<std::size_t>(rows) * cols;
  if (bytes.size() != 16 + count * 8) {
    throw IoError(path.string() + ": truncated PHF2 payload");
  }
  std::vector<double> data(count);
  for (std::size_t k = 0; k < count; ++k) {
    data[k] = std::bit_cast<double>(get_u64le(bytes.data() + 16 + k * 8));
  }
  try {
    return Field2D::from_data(static_cast<int>(rows), static_cast<int>(cols),
                              std::move(data));
  } catch (const ContractError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_phase_pgm16(const std::filesystem::path& path,
                       const Field2D& field) {
  std::vector<unsigned char> bytes;
  const std::string header = "P5\n" + std::to_string(field.cols()) + " " +
                             std::to_string(field.rows()) + "\n65535\n";
  bytes.insert(bytes.end(), header.begin(), header.end());
  for (double v : field.values()) {
    double t = (v + kPi) / (2.0 * kPi) * 65535.0;
    t = std::clamp(t, 0.0, 65535.0);
    const auto g = static_cast<std::uint16_t>(std::lround(t));
    bytes.push_back(static_cast<unsigned char>(g >> 8));  // PGM is big-endian
    bytes.push_back(static_cast<unsigned char>(g & 0xff));
  }
  write_all(path, bytes);
}

PgmImport import_pgm_phase(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = read_all(path);
  std::size_t pos = 0;
  auto next_token = [&]() -> std::string {
    while (pos < bytes.size()) {
      const char c = static_cast<char>(bytes[pos]);
      if (c == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else {
        break;
      }
    }
    std::string tok;
    while (pos < bytes.size() &&
           !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
      tok.push_back(static_cast<char>(bytes[pos++]));
    }
    if (tok.empty()) throw IoError(path.string() + ": truncated PGM header");
    return tok;
  };

  if (next_token() != "P5") {
    throw IoError(path.string() + ": not a binary (P5) PGM");
  }
  int cols, rows, maxval;
  try {
    cols = std::stoi(next_token());
    rows = std::stoi(next_token());
    maxval = std::stoi(next_token());
  } catch (const std::exception&) {
    throw IoError(path.string() + ": malformed PGM header");
  }
  if (rows < 2 || cols < 2 || maxval < 1 || maxval > 65535) {
    throw IoError(path.string() + ": unsupported PGM geometry or depth");
  }
  ++pos;  // single whitespace after maxval
  const int bytes_per_sample = maxval > 255 ? 2 : 1;
  const std::size_t count = static_cast<std::size_t>(rows) * cols;
  if (bytes.size() - pos < count * bytes_per_sample) {
    throw IoError(path.string() + ": truncated PGM payload");
  }

  Field2D psi(rows, cols);
  const double scale = 2.0 * kPi / maxval;
  for (std::size_t k = 0; k < count; ++k) {
    int g;
    if (bytes_per_sample == 2) {
      g = (bytes[pos + 2 * k] << 8) | bytes[pos + 2 * k + 1];
    } else {
      g = bytes[pos + k];
    }
    psi.data()[k] = g * scale - kPi;
  }
  return PgmImport{WrappedPhase::from_field(std::move(psi)), maxval, scale,
                   -kPi};
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_trace_csv(const std::filesystem::path& path,
                     const SolveReport& report) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "iter,rel_change,energy_total,energy_fit_real,energy_fit_im,"
         "energy_pyth,energy_tv_real,energy_tv_im\n";
  const bool have_energy = !report.energies.empty();
  auto energy_columns = [&](std::size_t idx) -> std::string {
    if (!have_energy || idx >= report.energies.size()) return ",,,,,";
    const EnergyBreakdown& e = report.energies[idx];
    return format_double(e.total) + "," + format_double(e.fit_real) + "," +
           format_double(e.fit_im) + "," + format_double(e.pythagoras) + "," +
           format_double(e.tv_real) + "," + format_double(e.tv_im);
  };
  if (have_energy) out << "0,," << energy_columns(0) << "\n";
  for (std::size_t k = 0; k < report.relative_changes.size(); ++k) {
    out << (k + 1) << "," << format_double(report.relative_changes[k]) << ","
        << energy_columns(k + 1) << "\n";
  }
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace wptv
