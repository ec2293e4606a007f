/**
 * @file jt.hpp
 * @brief Umbrella header.
 */
#pragma once

#include "jt/algebra.hpp"
#include "jt/analysis.hpp"
#include "jt/combinat.hpp"
#include "jt/errors.hpp"
#include "jt/io.hpp"
#include "jt/layers.hpp"
#include "jt/ordinal.hpp"
#include "jt/pairing.hpp"
#include "jt/term.hpp"
