"""K-modes clustering by per-cluster kernel-density mode seeking.

Thin Python surface over the C++ core: dataset generators, K-means,
homotopy K-modes, Gaussian mean-shift, bandwidth selection, and external
clustering metrics (ARI, NMI).
"""

from modecluster._core import (
    __version__,
    adjusted_rand_index,
    assign_nearest,
    bounding_box_diagonal,
    contingency,
    gen_degree_mixture,
    gen_gaussian_blobs,
    gen_two_moons,
    gms_cluster,
    gms_mode_count_scan,
    kde_eval,
    kernel_g,
    kmeans,
    kmeans_objective,
    kmodes,
    kmodes_fixed,
    kmodes_objective,
    knn_avg_bandwidth,
    load_csv,
    make_schedule,
    mean_shift_step,
    mode_seek,
    normalized_mutual_information,
    save_csv,
    set_max_threads,
)

__all__ = [
    "__version__",
    "adjusted_rand_index",
    "assign_nearest",
    "bounding_box_diagonal",
    "contingency",
    "gen_degree_mixture",
    "gen_gaussian_blobs",
    "gen_two_moons",
    "gms_cluster",
    "gms_mode_count_scan",
    "kde_eval",
    "kernel_g",
    "kmeans",
    "kmeans_objective",
    "kmodes",
    "kmodes_fixed",
    "kmodes_objective",
    "knn_avg_bandwidth",
    "load_csv",
    "make_schedule",
    "mean_shift_step",
    "mode_seek",
    "normalized_mutual_information",
    "save_csv",
    "set_max_threads",
]
