#pragma once

#include "errors.hpp"
#include "weights.hpp"
#include "roots.hpp"
#include "partitions.hpp"
#include "catalog.hpp"
#include "branching.hpp"
