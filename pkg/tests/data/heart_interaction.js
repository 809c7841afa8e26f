// Two buttons: group 1 moves the heart right, group 2 moves it left
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
        moveSpeed: 0.15, // Horizontal movement per pressed frame
    };
}

function dynamicInteraction(deltaTime, params, parentParams) {
    initializeButtons(params);
    ShapeDisplay.Pins.forEach((pin) => {
        if (pin.isButton && pin.isPressing) {
            if (pin.buttonGroup_id == 1) {
                parentParams.heartPositionX += params.moveSpeed;
            } else if (pin.buttonGroup_id == 2) {
                parentParams.heartPositionX -= params.moveSpeed;
            }
        }
    });
}
