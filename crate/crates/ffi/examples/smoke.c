#include <stdio.h>
#include "powerchar.h"

int main(void) {
    PcSumReport r;
    if (pc_sum_total(3, 1000.0, 500.0, 1, 0, &r) != PC_STATUS_OK) {
        fprintf(stderr, "%s\n", pc_last_error_message());
        return 1;
    }
    printf("S3(1000, 500) = %.0f\n", r.total_re);

    PcCharacterTable *t = NULL;
    if (pc_character_table_new(4, 13, 0, &t) != PC_STATUS_OK) return 1;
    int32_t v;
    pc_character_table_value(t, 2, &v);
    printf("chi_13(2) = i^%d\n", v);
    pc_character_table_free(t);

    if (pc_gauss_sum(7, 1, 0, 1, 0, NULL) != PC_STATUS_OK)
        printf("error: %s\n", pc_last_error_message());
    return 0;
}
