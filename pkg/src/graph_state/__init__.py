# Graph state package
# Defines the state structure for the reconstruction study workflow
