/* Compiled as C11: proves the public header and ABI work without any
 * C++ in the client. Runs a tiny end-to-end lifecycle. */
#include <stdio.h>
#include <string.h>

#include "wocsim.h"

static const char* kDoc =
    "mode = simulate\n"
    "n_agents = 12\n"
    "log_mean = -3\n"
    "log_variance = 0.72\n"
    "seed = 7\n"
    "alpha = 0.5\n"
    "beta = 0.5\n"
    "noise_d = 1e-3\n"
    "dt = 0.01\n"
    "steps = 40\n"
    "truth = 0.0498\n";

#define EXPECT(cond)                                                   \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "capi_smoke: FAILED %s (line %d): %s\n",   \
                    #cond, __LINE__, wocsim_last_error());             \
            return 1;                                                  \
        }                                                              \
    } while (0)

int main(void) {
    EXPECT(strlen(wocsim_version()) > 0);

    wocsim_config* config = NULL;
    EXPECT(wocsim_config_parse_text(kDoc, &config) == WOCSIM_OK);
    EXPECT(strcmp(wocsim_config_mode(config), "simulate") == 0);

    wocsim_trajectory* trajectory = NULL;
    EXPECT(wocsim_simulate(config, &trajectory) == WOCSIM_OK);
    EXPECT(wocsim_trajectory_size(trajectory) > 1);

    wocsim_metrics_row row;
    EXPECT(wocsim_trajectory_row(trajectory, 0, &row) == WOCSIM_OK);
    EXPECT(row.time == 0.0);
    EXPECT(row.arithmetic_mean > 0.0);
    EXPECT(row.wisdom_indicator >= 0);

    EXPECT(wocsim_trajectory_write_csv(trajectory, "capi_smoke_out.csv") ==
           WOCSIM_OK);
    remove("capi_smoke_out.csv");

    /* Error path: null argument. */
    EXPECT(wocsim_simulate(NULL, &trajectory) == WOCSIM_E_INVALID_ARGUMENT);
    EXPECT(strlen(wocsim_last_error()) > 0);

    wocsim_trajectory_free(trajectory);
    wocsim_config_free(config);
    printf("capi_smoke: OK\n");
    return 0;
}
