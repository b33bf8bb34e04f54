#pragma once

#include "geophase/cocycles.hpp"
#include "geophase/errors.hpp"
#include "geophase/grassmann.hpp"
#include "geophase/job.hpp"
#include "geophase/matfun.hpp"
#include "geophase/phases.hpp"
#include "geophase/rankone.hpp"
#include "geophase/version.hpp"
