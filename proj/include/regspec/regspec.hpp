#pragma once

#include "regspec/error.hpp"
#include "regspec/graph.hpp"
#include "regspec/graph_io.hpp"
#include "regspec/generators.hpp"
#include "regspec/spectra.hpp"
#include "regspec/walks.hpp"
#include "regspec/cycles_girth.hpp"
#include "regspec/serre.hpp"
#include "regspec/corpus.hpp"
