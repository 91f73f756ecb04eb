import os


default_encoding = "utf8"

# Conductivities below this are treated as absent edges during assembly
conductivity_floor = 1e-12
pheromone_floor = 1e-12
# Largest system handed to the sparse direct solver under method="auto"
direct_solver_limit = 2000

root_dir = os.path.normpath(os.path.join(os.path.dirname(os.path.realpath(__file__)), os.pardir, os.pardir))
config_loc = os.path.join(root_dir, "data", "config")
