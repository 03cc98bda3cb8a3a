#include "pdsp/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "pdsp/errors.hpp"
#include "pdsp/geometry.hpp"

namespace pdsp {

const char* to_string(PRule rule) {
  switch (rule) {
    case PRule::kCeilNOver10: return "ceil10";
    case PRule::kTwoCeilNOver10: return "2ceil10";
    case PRule::kExplicit: return "explicit";
  }
  return "?";
}

PRule parse_p_rule(const std::string& text) {
  if (text == "ceil10") return PRule::kCeilNOver10;
  if (text == "2ceil10") return PRule::kTwoCeilNOver10;
  if (text == "explicit") return PRule::kExplicit;
  throw ArgumentError("unknown p rule '" + text + "' (expected ceil10, 2ceil10 or explicit)");
}

const char* to_string(FileFormat format) {
  switch (format) {
    case FileFormat::kAuto: return "auto";
    case FileFormat::kTriplet: return "triplet";
    case FileFormat::kPoints: return "points";
  }
  return "?";
}

FileFormat parse_format(const std::string& text) {
  if (text == "auto") return FileFormat::kAuto;
  if (text == "triplet") return FileFormat::kTriplet;
  if (text == "points") return FileFormat::kPoints;
  throw ArgumentError("unknown format '" + text + "' (expected auto, triplet or points)");
}

namespace {

std::size_t ceil_tenth(std::size_t n) { return (n + 9) / 10; }

}  // namespace

void GenSpec::check() const {
  if (n < 2) throw ArgumentError("generator needs n >= 2");
  if (n > kMaxLocations) throw ArgumentError("generator n exceeds " + std::to_string(kMaxLocations));
  if (s < 1) throw ArgumentError("generator needs s >= 1");
  if (!(std::isfinite(low) && std::isfinite(high) && low < high)) {
    throw ArgumentError("generator needs finite low < high");
  }
  if (!(r > 0.0 && r <= 2.0)) throw ArgumentError("exponent r must lie in (0, 2]");
  const std::size_t pp = resolve_p();
  if (pp < 1 || pp > n) throw ArgumentError("p must satisfy 1 <= p <= n");
}

std::size_t GenSpec::resolve_p() const {
  switch (p_rule) {
    case PRule::kCeilNOver10: return ceil_tenth(n);
    case PRule::kTwoCeilNOver10: return 2 * ceil_tenth(n);
    case PRule::kExplicit: return p;
  }
  return p;
}

std::string GenSpec::default_name() const {
  return "gkd_n" + std::to_string(n) + "_s" + std::to_string(s) + "_p" +
         std::to_string(resolve_p()) + "_seed" + std::to_string(seed);
}

Instance generate(const GenSpec& spec) {
  spec.check();
  std::mt19937_64 rng(spec.seed);
  const double width = spec.high - spec.low;
  std::vector<double> coords(spec.n * spec.s);
  for (double& c : coords) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    c = spec.low + width * u;
  }
  PointSet points(spec.s, std::move(coords));
  DenseMatrix q = build_distance_matrix(points, spec.r);
  return make_instance(spec.default_name(), std::move(q), spec.resolve_p(), spec.r,
                       std::move(points));
}

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    std::istringstream ss(text);
    Line line{number, {}};
    std::string tok;
    while (ss >> tok) line.tokens.push_back(tok);
    if (line.tokens.empty() || line.tokens.front().front() == '#') continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

double to_double(const std::string& tok, std::size_t line) {
  double v = 0.0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError("not a number: '" + tok + "'", line);
  if (!std::isfinite(v)) throw ParseError("non-finite value '" + tok + "'", line);
  return v;
}

std::size_t to_count(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("not a non-negative integer: '" + tok + "'", line);
  }
  return v;
}

std::size_t header_n(const Line& header) {
  const std::size_t n = to_count(header.tokens[0], header.number);
  if (n < 1) throw ParseError("instance needs at least one location", header.number);
  if (n > kMaxLocations) {
    throw ParseError("more than " + std::to_string(kMaxLocations) + " locations", header.number);
  }
  return n;
}

DenseMatrix parse_triplets(const std::vector<Line>& lines) {
  const Line& header = lines.front();
  if (header.tokens.size() != 1) throw ParseError("triplet header must be a single count", header.number);
  const std::size_t n = header_n(header);
  DenseMatrix q(n);
  std::vector<std::uint8_t> seen(n * n, 0);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.tokens.size() != 3) throw ParseError("expected 'i j d'", line.number);
    std::size_t i = to_count(line.tokens[0], line.number);
    std::size_t j = to_count(line.tokens[1], line.number);
    const double d = to_double(line.tokens[2], line.number);
    if (i < 1 || i > n || j < 1 || j > n) {
      throw ParseError("index out of range 1.." + std::to_string(n), line.number);
    }
    if (i == j) throw ParseError("diagonal entries are implied and must not be listed", line.number);
    if (d < 0.0) throw ParseError("negative distance", line.number);
    --i;
    --j;
    if (i > j) std::swap(i, j);
    if (seen[i * n + j]) {
      throw ParseError("pair (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                           ") listed twice",
                       line.number);
    }
    seen[i * n + j] = 1;
    q(i, j) = d;
    q(j, i) = d;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!seen[i * n + j]) {
        throw ParseError("missing pair (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                             "); only complete matrices are accepted",
                         0);
      }
    }
  }
  return q;
}

PointSet parse_points(const std::vector<Line>& lines) {
  const Line& header = lines.front();
  if (header.tokens.size() != 2) throw ParseError("points header must be 'n s'", header.number);
  const std::size_t n = header_n(header);
  const std::size_t s = to_count(header.tokens[1], header.number);
  if (s < 1) throw ParseError("points need dimension s >= 1", header.number);
  if (lines.size() - 1 != n) {
    throw ParseError("expected " + std::to_string(n) + " point lines, found " +
                         std::to_string(lines.size() - 1),
                     lines.size() - 1 > n ? lines[n + 1].number : 0);
  }
  std::vector<double> coords;
  coords.reserve(n * s);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.tokens.size() != s) {
      throw ParseError("expected " + std::to_string(s) + " coordinates", line.number);
    }
    for (const auto& tok : line.tokens) coords.push_back(to_double(tok, line.number));
  }
  return PointSet(s, std::move(coords));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Instance parse_instance(std::istream& in, const ReadOptions& options, std::string name) {
  const std::vector<Line> lines = tokenize(in);
  if (lines.empty()) throw ParseError("empty instance file", 0);
  FileFormat format = options.format;
  if (format == FileFormat::kAuto) {
    const std::size_t count = lines.front().tokens.size();
    if (count == 1) {
      format = FileFormat::kTriplet;
    } else if (count == 2) {
      format = FileFormat::kPoints;
    } else {
      throw ParseError("cannot detect the format: header must hold 1 (triplet) or 2 (points) "
                       "tokens",
                       lines.front().number);
    }
  }

  std::optional<PointSet> points;
  DenseMatrix q;
  if (format == FileFormat::kTriplet) {
    q = parse_triplets(lines);
  } else {
    points = parse_points(lines);
    q = build_distance_matrix(*points, options.r);
  }
  const std::size_t p = options.p.value_or(std::max<std::size_t>(1, ceil_tenth(q.size())));
  return make_instance(std::move(name), std::move(q), p, options.r, std::move(points));
}

Instance read_instance(const std::filesystem::path& path, const ReadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file " + path.string());
  try {
    return parse_instance(in, options, path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

void write_instance(const Instance& inst, std::ostream& out, FileFormat format) {
  const std::size_t n = inst.n();
  if (format == FileFormat::kPoints) {
    if (!inst.points()) throw IoError("points format needs an instance built from points");
    const PointSet& pts = *inst.points();
    out << n << ' ' << pts.dim() << '\n';
    for (std::size_t i = 0; i < n; ++i) {
      const auto pt = pts.point(i);
      for (std::size_t d = 0; d < pt.size(); ++d) {
        if (d) out << ' ';
        out << format_double(pt[d]);
      }
      out << '\n';
    }
  } else {
    out << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        out << i + 1 << ' ' << j + 1 << ' ' << format_double(inst.q()(i, j)) << '\n';
      }
    }
  }
  if (!out) throw IoError("write failed");
}

void write_instance(const Instance& inst, const std::filesystem::path& path, FileFormat format) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot create " + path.string());
  try {
    write_instance(inst, out, format);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

namespace {

using nlohmann::json;

json to_json(const SuiteEntry& e) {
  const GenSpec& g = e.spec;
  return json{{"name", e.name},         {"file", e.file},       {"format", to_string(e.format)},
              {"n", g.n},               {"s", g.s},             {"low", g.low},
              {"high", g.high},         {"r", g.r},             {"seed", g.seed},
              {"p_rule", to_string(g.p_rule)}, {"p", g.resolve_p()}};
}

SuiteEntry entry_from_json(const json& j) {
  SuiteEntry e;
  e.name = j.at("name").get<std::string>();
  e.file = j.value("file", std::string());
  e.format = parse_format(j.value("format", std::string("triplet")));
  GenSpec& g = e.spec;
  g.n = j.at("n").get<std::size_t>();
  g.s = j.value("s", std::size_t{2});
  g.low = j.value("low", 0.0);
  g.high = j.value("high", 100.0);
  g.r = j.value("r", 1.0);
  g.seed = j.value("seed", std::uint64_t{1});
  g.p_rule = parse_p_rule(j.value("p_rule", std::string("ceil10")));
  g.p = j.value("p", std::size_t{0});
  return e;
}

}  // namespace

Suite read_suite(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open suite manifest " + manifest.string());
  try {
    const json doc = json::parse(in);
    Suite suite;
    suite.name = doc.value("name", manifest.stem().string());
    for (const json& j : doc.at("entries")) suite.entries.push_back(entry_from_json(j));
    return suite;
  } catch (const json::exception& e) {
    throw ParseError(manifest.string() + ": " + e.what(), 0);
  }
}

void write_suite(const Suite& suite, const std::filesystem::path& manifest) {
  json doc{{"name", suite.name}, {"entries", json::array()}};
  for (const SuiteEntry& e : suite.entries) doc["entries"].push_back(to_json(e));
  std::ofstream out(manifest);
  if (!out) throw IoError("cannot create " + manifest.string());
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + manifest.string());
}

Instance load_entry(const SuiteEntry& e, const std::filesystem::path& dir) {
  if (e.file.empty()) return generate(e.spec).with_name(e.name);
  ReadOptions opts;
  opts.format = e.format;
  opts.r = e.spec.r;
  opts.p = e.spec.resolve_p();
  return read_instance(dir / e.file, opts).with_name(e.name);
}

}  // namespace pdsp
