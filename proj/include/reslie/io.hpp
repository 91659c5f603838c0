#pragma once

#include <optional>
#include <string>

#include "reslie/catalog.hpp"

namespace reslie {

/// One algebra with optional module and morphism attachments.
struct AlgebraDocument {
    PMap algebra;
    std::optional<LModule> module;
    std::optional<Morphism> morphism;  // source is `algebra`
};

/// Shape checks only; axioms are left to the caller. Syntax errors carry "line L, column C".
Expected<AlgebraDocument> parse_algebra_document(const std::string& text);
Expected<AlgebraDocument> load_algebra_document(const std::string& path);
/// Parse plus Jacobi and p-map axioms; the first failure is reported with its witness.
Expected<AlgebraDocument> load_validated(const std::string& path);

std::string serialize_algebra(const PMap& P, int indent = 2);
std::string serialize_document(const AlgebraDocument& doc, int indent = 2);

/// Jet file: {"p", "dim", "terms": [{"degree": k, "brackets": {...}, "pmap": {...}}]} over `base`.
Expected<TruncatedDeformation> parse_jet(const std::string& text, const PMap& base);
Expected<TruncatedDeformation> load_jet(const std::string& path, const PMap& base);
std::string serialize_jet(const TruncatedDeformation& D, int indent = 2);

Expected<std::string> read_file(const std::string& path);

}  // namespace reslie
