#pragma once

#include "autos2d.hpp"
#include "discs.hpp"
#include "errors.hpp"
#include "groups.hpp"
#include "metrics.hpp"
#include "moebius.hpp"
#include "separation.hpp"
#include "serialization.hpp"
#include "verify.hpp"
