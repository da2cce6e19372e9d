#pragma once

#include "fsot/analysis.hpp"
#include "fsot/applications.hpp"
#include "fsot/classes.hpp"
#include "fsot/core.hpp"
#include "fsot/error.hpp"
#include "fsot/image.hpp"
#include "fsot/kernel.hpp"
#include "fsot/optimizer.hpp"
#include "fsot/perceptual.hpp"
#include "fsot/point_io.hpp"
#include "fsot/presets.hpp"
#include "fsot/random.hpp"
#include "fsot/sliced_ot.hpp"
#include "fsot/targets.hpp"
