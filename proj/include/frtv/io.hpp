#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "frtv/frac1d.hpp"
#include "frtv/gridfield.hpp"
#include "frtv/tvr.hpp"

namespace frtv {

struct PropertyReport;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One value per line; an optional leading `# n=<n>` header is checked
/// against the sample count.
Signal1D read_signal_csv(std::istream& is);
Signal1D read_signal_csv(const std::filesystem::path& path);
void write_signal_csv(std::ostream& os, const Signal1D& w);
void write_signal_csv(const std::filesystem::path& path, const Signal1D& w);

enum class PgmFormat { ascii, binary };

/// Square greyscale image normalized to [0, 1]; columns run along x1, rows
/// along x2.
struct PgmImage {
  GridField field;
  int maxval = 255;
  PgmFormat format = PgmFormat::binary;
};

PgmImage read_pgm(std::istream& is);
PgmImage read_pgm(const std::filesystem::path& path);
/// Inverse of the normalization, clamped to [0, maxval].
void write_pgm(std::ostream& os, const GridField& field, int maxval, PgmFormat format);
void write_pgm(const std::filesystem::path& path, const GridField& field, int maxval,
               PgmFormat format);

nlohmann::json to_json(const TVResult& r);
nlohmann::json to_json(const PropertyReport& r);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace frtv
