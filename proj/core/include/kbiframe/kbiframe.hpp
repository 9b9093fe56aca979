#pragma once

#include "kbiframe/biframe.hpp"
#include "kbiframe/error.hpp"
#include "kbiframe/linalg.hpp"
#include "kbiframe/matrix.hpp"
#include "kbiframe/operator_analysis.hpp"
#include "kbiframe/random.hpp"
#include "kbiframe/tolerance.hpp"
#include "kbiframe/transforms.hpp"
