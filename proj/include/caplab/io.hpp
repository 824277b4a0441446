#pragma once

#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "caplab/homspace.hpp"
#include "caplab/space.hpp"

namespace caplab {

/// A malformed input file; `line` is 1-based (0 when not line-specific).
class ParseError : public std::runtime_error {
public:
	ParseError(std::string source, std::size_t line, const std::string& what);

	const std::string& source() const { return source_; }
	std::size_t line() const { return line_; }

private:
	std::string source_;
	std::size_t line_;
};

/// .cap format:
///   space <name>
///   centered true|false
///   points <p1> <p2> ...
///   lambda <x> <a> <weight>
/// Unlisted entries default to 0 on the diagonal and inf elsewhere.
FiniteCapSpace parse_space(std::string_view text, const std::string& source = "<input>");
FiniteCapSpace read_space(const std::filesystem::path& file);
/// Writes only entries that differ from the defaults.
std::string serialize_space(const FiniteCapSpace& space);

/// Resolves the space names used by `from` / `to` lines.
using SpaceResolver = std::function<FiniteCapSpace(const std::string& name)>;

/// .map format:
///   map <name>
///   from <space> [restrict <p1> <p2> ...]
///   to <space>
///   pair <x> <y>
SpaceMap parse_map(std::string_view text, const SpaceResolver& resolve, const std::string& source = "<input>");
/// Resolves names against `extra` first, then `<dir>/<name>.cap` or `<dir>/<name>`.
SpaceMap read_map(const std::filesystem::path& file, const std::vector<FiniteCapSpace>& extra = {});
std::string serialize_map(const SpaceMap& map);

/// .fns format: one function per line, `h: x1->y1 x2->y2 ...`. Returns the
/// listed functions as indices into the full function space Y^X.
std::vector<std::size_t> parse_functions(std::string_view text, const FunctionSpace& fs,
                                         const std::string& source = "<input>");
std::vector<std::size_t> read_functions(const std::filesystem::path& file, const FunctionSpace& fs);
std::string serialize_functions(const FunctionSpace& fs, const PrincipalFilter& filter);

/// `{a,b,c}` (braces optional) as a subset of `space`.
PointSet parse_subset(std::string_view text, const FiniteCapSpace& space);

std::string read_file(const std::filesystem::path& file);

} // namespace caplab
