#pragma once

#include "haarcp/builtins.hpp"
#include "haarcp/classifier.hpp"
#include "haarcp/compact.hpp"
#include "haarcp/cp.hpp"
#include "haarcp/error.hpp"
#include "haarcp/group.hpp"
#include "haarcp/isoclinism.hpp"
#include "haarcp/permutation.hpp"
#include "haarcp/rational.hpp"
#include "haarcp/spec_io.hpp"
