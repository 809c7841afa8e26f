// Two buttons: group 1 rotates the heart clockwise, group 2 counter-clockwise
function initializeInteractionParameters() {
    return {
        buttons: [
            {
                id: 1,
                size: 1,
                position: [
                    Math.floor((2 * ShapeDisplay.grid_x) / 3),
                    Math.floor(ShapeDisplay.grid_y - 4),
                ],
                init_height: 50,
            },
            {
                id: 2,
                size: 1,
                position: [
                    Math.floor(ShapeDisplay.grid_x / 3),
                    Math.floor(ShapeDisplay.grid_y - 4),
                ],
                init_height: 50,
            },
        ],
        rotateSpeed: 0.05, // Radians per pressed frame
    };
}

function dynamicInteraction(deltaTime, params, parentParams) {
    initializeButtons(params);
    ShapeDisplay.Pins.forEach((pin) => {
        if (pin.isButton && pin.isPressing) {
            if (pin.buttonGroup_id == 1) {
                parentParams.heartRotation += params.rotateSpeed;
            } else if (pin.buttonGroup_id == 2) {
                parentParams.heartRotation -= params.rotateSpeed;
            }
        }
    });
}
