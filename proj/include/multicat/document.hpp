#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multicat/stretching.hpp"

namespace multicat {

enum class DocumentKind { MultipleSet, Reflexive, Magma, Strict, Reversors, Stretching };

const char* to_string(DocumentKind k);
std::optional<DocumentKind> parse_document_kind(std::string_view s);

inline constexpr int kFormatVersion = 1;

/// One structure in the exchange format. `structure` carries the tables for
/// every kind except stretching; `meta` holds free-form provenance such as
/// generator seeds and is echoed verbatim.
struct Document {
  DocumentKind kind = DocumentKind::MultipleSet;
  MagmaStructure structure;
  std::optional<Truncation> truncation;
  std::optional<ReversorStructure> reversors;
  std::optional<Stretching> stretching;
  std::vector<StageRecord> stage_log;
  std::map<std::string, std::string> meta;
};

/// Canonical bytes: sorted keys, two-space indent, trailing newline.
std::string serialize(const Document& d);

/// Throws Error(ParseError) with "line L column C" for malformed text and a
/// key path for well-formed text that does not match the schema.
Document parse_document(std::string_view text);

/// Throws Error(ParseError) when the file cannot be read.
Document read_document(const std::filesystem::path& path);
void write_document(const std::filesystem::path& path, const Document& d);

struct DocumentCheck {
  std::optional<DocumentKind> as;  // validate as another kind
  std::optional<int> m;
  std::optional<ReversorKind> reversor_kind;
};

/// Every layer the document's kind promises.
ValidationReport validate_document(const Document& d, const DocumentCheck& options = {});

Document multiple_set_document(const MultipleSet& ms);
Document strict_document(const StrictCategory& c, std::optional<Truncation> truncation = std::nullopt);
Document weak_document(const FreeWeakResult& w);

}  // namespace multicat
