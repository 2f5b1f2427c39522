#ifndef SEP_SEP_HPP
#define SEP_SEP_HPP

// Umbrella header.

#include "sep/dataset.hpp"
#include "sep/errors.hpp"
#include "sep/hybrid.hpp"
#include "sep/measures.hpp"
#include "sep/neighbors.hpp"
#include "sep/select.hpp"
#include "sep/synth.hpp"

#endif  // SEP_SEP_HPP
