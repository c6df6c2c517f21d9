#pragma once

#include "hcad/generate.hpp"
#include "hcad/grid.hpp"
#include "hcad/hca.hpp"
#include "hcad/io.hpp"
#include "hcad/offsets.hpp"
#include "hcad/oracle.hpp"
#include "hcad/representatives.hpp"
#include "hcad/types.hpp"
