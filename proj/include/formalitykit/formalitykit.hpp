#pragma once

#include "formalitykit/config_algebra.hpp"
#include "formalitykit/config_graph.hpp"
#include "formalitykit/configurations.hpp"
#include "formalitykit/errors.hpp"
#include "formalitykit/exact_linalg.hpp"
#include "formalitykit/field.hpp"
#include "formalitykit/formality.hpp"
#include "formalitykit/graded_algebra.hpp"
#include "formalitykit/graded_space.hpp"
#include "formalitykit/hochschild.hpp"
#include "formalitykit/presentation.hpp"

namespace fkit {
inline constexpr const char* version = "0.1.0";
}
