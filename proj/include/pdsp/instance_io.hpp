#ifndef PDSP_INSTANCE_IO_HPP
#define PDSP_INSTANCE_IO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pdsp/instance.hpp"

namespace pdsp {

enum class PRule { kCeilNOver10, kTwoCeilNOver10, kExplicit };

const char* to_string(PRule rule);
/// Accepts "ceil10", "2ceil10" and "explicit".
PRule parse_p_rule(const std::string& text);

/// Recipe for a random instance: n points drawn uniformly from [low, high]^s.
struct GenSpec {
  std::size_t n = 25;
  std::size_t s = 2;
  double low = 0.0;
  double high = 100.0;
  double r = 1.0;
  std::uint64_t seed = 1;
  PRule p_rule = PRule::kCeilNOver10;
  /// Used only with PRule::kExplicit.
  std::size_t p = 0;

  /// Throws ArgumentError if the recipe cannot produce a valid instance.
  void check() const;
  std::size_t resolve_p() const;
  /// e.g. "gkd_n25_s2_p3_seed42"
  std::string default_name() const;
};

/// Deterministic: equal specs give bit-identical instances on every platform.
/// Coordinates come from std::mt19937_64(seed), point by point, each as
/// low + (high - low) * u with u = (draw >> 11) * 2^-53.
Instance generate(const GenSpec& spec);

enum class FileFormat { kAuto, kTriplet, kPoints };

const char* to_string(FileFormat format);
/// Accepts "auto", "triplet" and "points".
FileFormat parse_format(const std::string& text);

struct ReadOptions {
  FileFormat format = FileFormat::kAuto;
  /// Exponent used when building Q from a points file.
  double r = 1.0;
  /// Cardinality; files carry none, so the default is ceil(n / 10).
  std::optional<std::size_t> p;
};

/// Triplet: a line "n", then "i j d" for every pair i < j (1-indexed).
/// Points: a line "n s", then n lines of s coordinates.
/// Blank lines and lines starting with '#' are skipped. Throws ParseError
/// with the offending line number.
Instance parse_instance(std::istream& in, const ReadOptions& options, std::string name = "");
Instance read_instance(const std::filesystem::path& path, const ReadOptions& options = {});

/// Decimals are written with 17 significant digits so a read-back is exact.
/// Points format needs the instance to carry its points. Throws IoError.
void write_instance(const Instance& inst, std::ostream& out, FileFormat format);
void write_instance(const Instance& inst, const std::filesystem::path& path, FileFormat format);

struct SuiteEntry {
  std::string name;
  GenSpec spec;
  /// Instance file relative to the manifest directory; empty means the
  /// instance is regenerated from `spec`.
  std::string file;
  FileFormat format = FileFormat::kTriplet;
};

struct Suite {
  std::string name;
  std::vector<SuiteEntry> entries;
};

Suite read_suite(const std::filesystem::path& manifest);
void write_suite(const Suite& suite, const std::filesystem::path& manifest);

/// Loads entry `e` of a suite whose manifest lives in `dir`.
Instance load_entry(const SuiteEntry& e, const std::filesystem::path& dir);

}  // namespace pdsp

#endif  // PDSP_INSTANCE_IO_HPP
