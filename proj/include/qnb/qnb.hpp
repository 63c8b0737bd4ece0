#pragma once

#include "qnb/core.hpp"
#include "qnb/gaussian.hpp"
#include "qnb/io.hpp"
#include "qnb/optimize.hpp"
#include "qnb/optomech.hpp"
#include "qnb/probes.hpp"
#include "qnb/squeezer.hpp"
#include "qnb/version.hpp"
