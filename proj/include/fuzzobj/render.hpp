#pragma once

#include <string>

#include "fuzzobj/model.hpp"

namespace fuzzobj {

// Human-readable reports in the v/mu notation: {2/0.9 + 2.2/1 + 2.4/0.9}.

std::string render_set(const Type1FuzzySet& set);
std::string render_set(const Type2FuzzySet& set);
std::string render_value(const PropertyValue& value);
std::string render_method(const MethodDef& method);
std::string render_class(const FuzzyClass& cls);

}  // namespace fuzzobj
