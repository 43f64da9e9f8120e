// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.

#pragma once

#include "nnts/chi_squared.hpp"
#include "nnts/conditional.hpp"
#include "nnts/core.hpp"
#include "nnts/dataset.hpp"
#include "nnts/density.hpp"
#include "nnts/errors.hpp"
#include "nnts/estimation.hpp"
#include "nnts/hermitian.hpp"
#include "nnts/independence.hpp"
#include "nnts/io.hpp"
#include "nnts/marginal.hpp"
#include "nnts/sampling.hpp"
#include "nnts/summary.hpp"
