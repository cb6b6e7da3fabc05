#pragma once

// Plain-text instance and morphism files.
//
// Instance file:
//   domain: a b c
//   relation r1/1:
//   a
//   b
//
//   relation r2/2: empty
//
// Blocks are separated by blank lines; '#' starts a comment line.
//
// Morphism file:
//   morphism source.db -> target.db
//   sel[1='a'](r1)
//   ...
// Paths are relative to the morphism file's directory.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dbcat/relation.hpp"

namespace dbcat {

struct LoadedInstance {
  Domain domain;
  Instance instance;
};

/// Errors: FormatError (with line number), UnknownConstant, ArityMismatch,
/// ArityOutOfRange.
LoadedInstance parse_instance_text(std::string_view text);
/// Errors: IoError, plus parse errors.
LoadedInstance load_instance_file(const std::filesystem::path& path);

/// Every relation in canonical order, unlabeled ones named v<k>.
/// Errors: FormatError for relations carrying a coproduct tag.
std::string write_instance_text(const Domain& domain, const Instance& instance);

struct MorphismFile {
  std::filesystem::path source;
  std::filesystem::path target;
  std::vector<std::string> queries;
};

/// `base` resolves relative paths. Errors: FormatError.
MorphismFile parse_morphism_text(std::string_view text, const std::filesystem::path& base);
MorphismFile load_morphism_file(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace dbcat
