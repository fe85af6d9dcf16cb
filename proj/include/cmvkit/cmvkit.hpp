#pragma once

#include "cmvkit/errors.hpp"
#include "cmvkit/coeffs.hpp"
#include "cmvkit/series.hpp"
#include "cmvkit/moment_sequence.hpp"
#include "cmvkit/laurent.hpp"
#include "cmvkit/cmv.hpp"
#include "cmvkit/spectral.hpp"
#include "cmvkit/inverse.hpp"
#include "cmvkit/pipeline.hpp"
