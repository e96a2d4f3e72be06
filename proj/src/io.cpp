#include "frtv/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "frtv/propcheck.hpp"

namespace frtv {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& s, std::size_t line) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw IoError("line " + std::to_string(line) + ": '" + s + "' is not a finite number");
  }
  return v;
}

// Next whitespace-separated PGM header token, skipping comments.
std::string pgm_token(std::istream& is) {
  std::string tok;
  int c;
  while ((c = is.get()) != EOF) {
    if (c == '#') {
      while ((c = is.get()) != EOF && c != '\n') {
      }
      if (!tok.empty()) break;
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  if (tok.empty()) throw IoError("pgm: truncated header");
  return tok;
}

int pgm_int(std::istream& is, const char* what) {
  const std::string tok = pgm_token(is);
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || v <= 0) {
    throw IoError(std::string("pgm: bad ") + what + " '" + tok + "'");
  }
  return v;
}

}  // namespace

Signal1D read_signal_csv(std::istream& is) {
  std::vector<double> values;
  long declared = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const auto pos = t.find("n=");
      if (pos != std::string::npos && values.empty()) {
        declared = static_cast<long>(parse_real(trim(t.substr(pos + 2)), lineno));
      }
      continue;
    }
    values.push_back(parse_real(t, lineno));
  }
  if (declared >= 0 && static_cast<long>(values.size()) != declared + 1) {
    throw IoError("csv: header declares n=" + std::to_string(declared) + " but found " +
                  std::to_string(values.size()) + " samples (expected n+1)");
  }
  return Signal1D(std::move(values));
}

Signal1D read_signal_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_signal_csv(in);
}

void write_signal_csv(std::ostream& os, const Signal1D& w) {
  os << "# n=" << w.n() << '\n' << std::setprecision(17);
  for (double v : w.samples()) os << v << '\n';
}

void write_signal_csv(const std::filesystem::path& path, const Signal1D& w) {
  auto out = open_out(path);
  write_signal_csv(out, w);
}

PgmImage read_pgm(std::istream& is) {
  const std::string magic = pgm_token(is);
  PgmFormat format;
  if (magic == "P2") {
    format = PgmFormat::ascii;
  } else if (magic == "P5") {
    format = PgmFormat::binary;
  } else {
    throw IoError("pgm: unsupported magic '" + magic + "' (expected P2 or P5)");
  }
  const int width = pgm_int(is, "width");
  const int height = pgm_int(is, "height");
  const int maxval = pgm_int(is, "maxval");
  if (maxval > 65535) throw IoError("pgm: maxval above 65535");
  if (width != height) {
    throw IoError("pgm: image is " + std::to_string(width) + "x" + std::to_string(height) +
                  ", only square images are supported");
  }
  if (width < 3) throw IoError("pgm: image must be at least 3x3");
  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> values(count);
  if (format == PgmFormat::ascii) {
    for (std::size_t i = 0; i < count; ++i) {
      long v = -1;
      if (!(is >> v) || v < 0 || v > maxval) throw IoError("pgm: bad or missing pixel value");
      values[i] = static_cast<double>(v) / maxval;
    }
  } else {
    const int bytes = maxval < 256 ? 1 : 2;
    std::vector<unsigned char> raw(count * bytes);
    is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(is.gcount()) != raw.size()) throw IoError("pgm: truncated pixel data");
    for (std::size_t i = 0; i < count; ++i) {
      const int v = bytes == 1 ? raw[i] : (raw[2 * i] << 8) | raw[2 * i + 1];
      if (v > maxval) throw IoError("pgm: pixel exceeds maxval");
      values[i] = static_cast<double>(v) / maxval;
    }
  }
  return PgmImage{GridField(2, static_cast<std::size_t>(width - 1), std::move(values)), maxval,
                  format};
}

PgmImage read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_pgm(in);
}

void write_pgm(std::ostream& os, const GridField& field, int maxval, PgmFormat format) {
  if (field.dims() != 2) throw IoError("pgm: only two-dimensional fields can be written");
  if (maxval < 1 || maxval > 65535) throw IoError("pgm: maxval must be in [1, 65535]");
  const std::size_t side = field.extent();
  os << (format == PgmFormat::ascii ? "P2" : "P5") << '\n'
     << side << ' ' << side << '\n'
     << maxval << '\n';
  const auto values = field.values();
  auto level = [&](double v) {
    return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * maxval));
  };
  if (format == PgmFormat::ascii) {
    for (std::size_t r = 0; r < side; ++r) {
      for (std::size_t c = 0; c < side; ++c) {
        os << level(values[r * side + c]) << (c + 1 == side ? '\n' : ' ');
      }
    }
  } else {
    const bool wide = maxval >= 256;
    std::string raw;
    raw.reserve(values.size() * (wide ? 2 : 1));
    for (double v : values) {
      const int q = level(v);
      if (wide) raw.push_back(static_cast<char>(q >> 8));
      raw.push_back(static_cast<char>(q & 0xff));
    }
    os.write(raw.data(), static_cast<std::streamsize>(raw.size()));
  }
}

void write_pgm(const std::filesystem::path& path, const GridField& field, int maxval,
               PgmFormat format) {
  auto out = open_out(path);
  write_pgm(out, field, maxval, format);
}

nlohmann::json to_json(const TVResult& r) {
  nlohmann::json terms = nlohmann::json::array();
  for (const TermValue& t : r.per_term) {
    terms.push_back({{"multi_index", t.multi_index}, {"label", t.label}, {"value", t.value}});
  }
  nlohmann::json p = r.p.is_infinity() ? nlohmann::json("inf") : nlohmann::json(r.p.p());
  return {{"order", r.order.value()}, {"p", p}, {"value", r.value}, {"per_term", terms}};
}

nlohmann::json to_json(const PropertyReport& r) {
  nlohmann::json cases = nlohmann::json::array();
  for (const PropertyCase& c : r.cases) {
    cases.push_back({{"description", c.description},
                     {"measured", c.measured},
                     {"bound", c.bound},
                     {"direction", c.direction == Direction::at_most ? "at_most" : "at_least"},
                     {"pass", c.pass}});
  }
  return {{"suite", r.suite},   {"note", r.note},    {"grid_sizes", r.grid_sizes},
          {"seed", r.seed},     {"pass", r.passed()}, {"cases", cases}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

}  // namespace frtv
