#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "fuzzobj/kb.hpp"

namespace fuzzobj {

using json = nlohmann::json;

/// Parses and fully validates a knowledge-base document (see
/// docs/format.md). Structural problems raise SchemaError, invariant
/// breaches ValidationError and bad expressions ParseError; every error
/// carries the document path of the offending element.
KnowledgeBase load_kb(const std::string& text);
KnowledgeBase load_kb_file(const std::string& path);

/// Canonical serialization: sorted keys, arrays in declaration order,
/// numbers in fixed-point with up to nine fractional digits and no
/// trailing zeros. load(save(kb)) == kb and repeated saves are
/// byte-identical.
std::string save_kb(const KnowledgeBase& kb);
void save_kb_file(const KnowledgeBase& kb, const std::string& path);

/// Modifier documents used by the CLI `modify` subcommand.
Modifier load_modifier(const std::string& text);
Modifier load_modifier_file(const std::string& path);

// JSON encoders shared with machine-readable reports.
json property_value_to_json(const PropertyValue& value);
json method_to_json(const MethodDef& method);
json class_to_json(const FuzzyClass& cls);
json object_to_json(const FuzzyObject& obj);
json kb_to_json(const KnowledgeBase& kb);

/// Canonical rendering of any JSON document (two-space indent, sorted
/// keys, deterministic number formatting).
std::string canonical_dump(const json& j);

}  // namespace fuzzobj
