#pragma once

#include "simplex_operad/scalar.hpp"
#include "simplex_operad/dist.hpp"
#include "simplex_operad/tree.hpp"
#include "simplex_operad/endo.hpp"
#include "simplex_operad/sexpr.hpp"
#include "simplex_operad/dot.hpp"
#include "simplex_operad/random.hpp"
#include "simplex_operad/law_report.hpp"
#include "simplex_operad/operad_laws.hpp"
#include "simplex_operad/module_laws.hpp"
#include "simplex_operad/derivation.hpp"
