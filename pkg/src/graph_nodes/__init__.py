# Graph nodes package
# Contains node functions and edge logic for the reconstruction study workflow
