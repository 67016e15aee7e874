#pragma once

#include "christol/automaton.hpp"
#include "christol/bounds.hpp"
#include "christol/cartier.hpp"
#include "christol/errors.hpp"
#include "christol/gf.hpp"
#include "christol/pipeline.hpp"
#include "christol/poly.hpp"
#include "christol/prep.hpp"
#include "christol/series.hpp"
#include "christol/text.hpp"
