#pragma once

// Umbrella header for the synthetic-data disclosure-vulnerability audit suite.

#include "privaudit/attribute.hpp"
#include "privaudit/core.hpp"
#include "privaudit/discretize.hpp"
#include "privaudit/equivalence.hpp"
#include "privaudit/errors.hpp"
#include "privaudit/generators.hpp"
#include "privaudit/io.hpp"
#include "privaudit/matcher.hpp"
#include "privaudit/membership.hpp"
#include "privaudit/membership_audit.hpp"
#include "privaudit/policy.hpp"
#include "privaudit/report.hpp"
#include "privaudit/rng.hpp"
#include "privaudit/sampling.hpp"
#include "privaudit/sim.hpp"
#include "privaudit/similarity.hpp"
#include "privaudit/version.hpp"
