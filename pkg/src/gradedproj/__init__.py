"""Multi-graded Proj computations: potions, charts, twists."""
