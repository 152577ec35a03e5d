#pragma once

// Exact workbench for algebraic quantum groups at finite support: instance
// catalog, law suites, counit/antipode derivation, modular data, duality and
// Pontrjagin double duals, module/comodule duality, instance file I/O.

#include "aqg/scalar.hpp"
#include "aqg/tensor.hpp"
#include "aqg/operators.hpp"
#include "aqg/linalg.hpp"
#include "aqg/groups.hpp"
#include "aqg/basis.hpp"
#include "aqg/qgdata.hpp"
#include "aqg/parallel.hpp"
#include "aqg/derive.hpp"
#include "aqg/laws.hpp"
#include "aqg/modular.hpp"
#include "aqg/instances.hpp"
#include "aqg/dual.hpp"
#include "aqg/modcomod.hpp"
#include "aqg/io.hpp"
#include "aqg/report.hpp"
