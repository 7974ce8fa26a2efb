#pragma once

#include "rotkit/error.hpp"
#include "rotkit/tree.hpp"
#include "rotkit/rotation.hpp"
#include "rotkit/common_edges.hpp"
#include "rotkit/oracle.hpp"
#include "rotkit/approx.hpp"
