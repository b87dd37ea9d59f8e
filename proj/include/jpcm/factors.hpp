#pragma once

#include "jpcm/factors/absolute_factor.hpp"
#include "jpcm/factors/dynamics_factor.hpp"
#include "jpcm/factors/input_limit_factor.hpp"
#include "jpcm/factors/input_rate_factor.hpp"
#include "jpcm/factors/reference_factor.hpp"
#include "jpcm/factors/relative_pose_factor.hpp"
