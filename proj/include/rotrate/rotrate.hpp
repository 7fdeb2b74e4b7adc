#pragma once

// Umbrella header for the rotrate library.

#include "rotrate/errors.hpp"
#include "rotrate/trajectory.hpp"
#include "rotrate/scene.hpp"
#include "rotrate/numdiff.hpp"
#include "rotrate/estimator.hpp"
#include "rotrate/segmentation.hpp"
#include "rotrate/trackio.hpp"
