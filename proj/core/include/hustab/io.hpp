#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hustab/approximant.hpp"
#include "hustab/infomeasure.hpp"

namespace hustab {

/// Malformed input. line() is 1-based, or 0 when no line applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line);
  int line() const { return line_; }

 private:
  int line_;
};

struct TabulatedData {
  std::vector<double> xs;
  std::vector<double> values;
  std::optional<double> f0;
  std::optional<double> f1;
};

/// Reads `x,value` CSV with x strictly increasing. Rows at x = 0 and x = 1 are
/// accepted only when closed_domain is set, and are then required.
TabulatedData read_tabulated_csv(std::istream& in, bool closed_domain);
TabulatedData read_tabulated_csv(const std::filesystem::path& path, bool closed_domain);

/// Shortest round-trip formatting, so reading back is bit-exact.
std::string write_tabulated_csv(const TabulatedData& data);

/// Shortest representation that parses back to the same double.
std::string format_shortest(double v);

std::string certificate_to_json(const StabilityCertificate& cert);
StabilityCertificate certificate_from_json(std::string_view text);

std::string family_certificate_to_json(const FamilyCertificate& cert);
FamilyCertificate family_certificate_from_json(std::string_view text);

std::string family_table_to_json(const FamilyTable& table);
FamilyTable family_table_from_json(std::string_view text);

/// CSV columns x, f, approximant, deviation over the certificate's sample points.
std::string plot_csv(const FunctionSpec& spec, const StabilityCertificate& cert, const DomainGrid& grid);

std::string read_file(const std::filesystem::path& path);

/// Writes to a temporary sibling and renames it over path.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace hustab
