/*
 * Copyright (c) 2026, the gaplab authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Compiled as C99: proves the public header needs no C++ compiler. */

#include <math.h>

#include "gaplab/gaplab.h"

int gaplab_c_smoke(void);

int gaplab_c_smoke(void) {
    const double sites[2] = {-1.0, 1.0};
    const double masses[2] = {-0.5, 0.5};
    gaplab_measure* m = NULL;
    double value = 0.0;
    size_t changes = 0;

    if (gaplab_measure_create(sites, masses, 2, &m) != GAPLAB_OK) return 1;
    if (gaplab_measure_size(m) != 2) return 2;
    if (gaplab_gap_residual(m, 1.0, 0, &value) != GAPLAB_OK) return 3;
    /* value = 1/2 - sin(2)/4 */
    if (fabs(value - (0.5 - sin(2.0) / 4.0)) > 1e-12) return 4;
    if (gaplab_sign_changes(m, 2.0, &changes) != GAPLAB_OK) return 5;
    gaplab_measure_free(m);
    if (gaplab_version() == 0) return 6;
    return 0;
}
