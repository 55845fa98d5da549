from .texture import TextureObjective, analyze, loss, layer_losses, loss_and_gradient, relative_distances, score
