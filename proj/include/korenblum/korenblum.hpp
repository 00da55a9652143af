#pragma once

#include "korenblum/bergman_series.hpp"
#include "korenblum/certificate.hpp"
#include "korenblum/domination.hpp"
#include "korenblum/errors.hpp"
#include "korenblum/params.hpp"
#include "korenblum/quadrature.hpp"
#include "korenblum/rational.hpp"
#include "korenblum/search.hpp"
#include "korenblum/version.hpp"
