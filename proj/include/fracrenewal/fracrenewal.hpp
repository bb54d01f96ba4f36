#pragma once

#include <fracrenewal/errors.hpp>
#include <fracrenewal/quadrature.hpp>
#include <fracrenewal/specfun.hpp>
#include <fracrenewal/rng.hpp>
#include <fracrenewal/renewal.hpp>
#include <fracrenewal/processes.hpp>
#include <fracrenewal/compound.hpp>
#include <fracrenewal/tfde.hpp>
#include <fracrenewal/sampling.hpp>
