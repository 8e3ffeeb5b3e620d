#pragma once

#include "spreadlab/config.hpp"
#include "spreadlab/emit.hpp"
#include "spreadlab/errors.hpp"
#include "spreadlab/parallelism.hpp"
#include "spreadlab/profile.hpp"
#include "spreadlab/projective.hpp"
#include "spreadlab/quaternion.hpp"
#include "spreadlab/report.hpp"
#include "spreadlab/sampling.hpp"
#include "spreadlab/spread.hpp"
#include "spreadlab/tolerances.hpp"
#include "spreadlab/vec.hpp"
#include "spreadlab/verify.hpp"
