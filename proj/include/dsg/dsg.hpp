#pragma once

#include "dsg/permutation.hpp"
#include "dsg/term.hpp"
#include "dsg/notation.hpp"
#include "dsg/shape_table.hpp"
#include "dsg/parallel.hpp"
#include "dsg/rewrite.hpp"
#include "dsg/graph.hpp"
#include "dsg/cycles.hpp"
#include "dsg/witness.hpp"
#include "dsg/io.hpp"
