#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "gmr/error.hpp"
#include "gmr/gmap.hpp"
#include "gmr/report.hpp"
#include "gmr/rewrite.hpp"
#include "gmr/scheme.hpp"

namespace gmr {

/// A document that parsed but fails the G-map constraints.
class InvalidGMapError : public Error {
public:
    explicit InvalidGMapError(Report report);
    const Report& report() const { return report_; }

private:
    Report report_;
};

/// Concrete rule together with the signature it was written against.
struct RuleDocument {
    GMapSpec spec;
    Rule rule;
};

/// Parses a `gmap n` document. Unless `force`, throws InvalidGMapError when
/// the result fails check_gmap.
GMap parse_gmap(std::string_view text, bool force = false);
std::string write_gmap(const GMap& g);

RuleDocument parse_rule(std::string_view text);
std::string write_rule(const RuleDocument& r);

RuleScheme parse_scheme(std::string_view text);
std::string write_scheme(const RuleScheme& r);

/// `rule` or `scheme`, by header.
std::variant<RuleDocument, RuleScheme> parse_rule_or_scheme(std::string_view text);

/// Renames every arc to `u-aI-v` (`u-_-v` when unlabelled), numbering
/// parallel duplicates `#2`, `#3`, ... in the order of their old ids.
IGraph canonicalize_arc_ids(const IGraph& g);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

GMap load_gmap(const std::filesystem::path& path, bool force = false);
void save_gmap(const GMap& g, const std::filesystem::path& path);

}  // namespace gmr
